#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fusionsim/graph_state.hpp"
#include "fusionsim/local_clifford.hpp"
#include "fusionsim/rng.hpp"

namespace fusionsim {

struct contradiction_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct invalid_state_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Sign (+1/-1) times a tensor of single-qubit Paulis, stored as X/Z bitvectors.
// Stored generators never carry +-i phases; multiplication asserts that.
class PauliString {
  public:
    PauliString() : n_(0), neg_(false) {}
    explicit PauliString(uint32_t n);

    static PauliString single(uint32_t n, uint32_t q, Pauli p, bool neg = false);

    uint32_t n() const { return n_; }
    bool negative() const { return neg_; }
    void set_negative(bool neg) { neg_ = neg; }

    bool x_bit(uint32_t q) const { return bit(x_, q); }
    bool z_bit(uint32_t q) const { return bit(z_, q); }
    void set_x(uint32_t q, bool v) { set_bit(x_, q, v); }
    void set_z(uint32_t q, bool v) { set_bit(z_, q, v); }

    bool is_identity_bits() const;
    bool commutes_with(const PauliString& other) const;

    // Multiplies `other` in from the right, tracking the +-1 sign. The i-phase
    // of the product must vanish (true whenever both factors commute, as for
    // stabilizer-group elements).
    void mul(const PauliString& other);

    // Conjugates the single-qubit slot q by c: P -> c P c^dag (slot-wise).
    void conjugate_slot(uint32_t q, const LocalClifford& c);
    void conjugate_cz(uint32_t a, uint32_t b);

    // Letter at slot q, or nullopt for identity.
    std::optional<Pauli> letter(uint32_t q) const;
    void set_letter(uint32_t q, std::optional<Pauli> p);

    std::string to_text() const;
    static PauliString from_text(const std::string& line);

    bool operator==(const PauliString&) const = default;

    // Lexicographic comparison of (x-bits, z-bits), for canonical row order.
    bool bits_less(const PauliString& other) const;
    bool bits_equal(const PauliString& other) const;

  private:
    static bool bit(const std::vector<uint64_t>& w, uint32_t q) {
        return (w[q >> 6] >> (q & 63)) & 1ULL;
    }
    static void set_bit(std::vector<uint64_t>& w, uint32_t q, bool v) {
        if (v) {
            w[q >> 6] |= 1ULL << (q & 63);
        } else {
            w[q >> 6] &= ~(1ULL << (q & 63));
        }
    }

    uint32_t n_;
    bool neg_;
    std::vector<uint64_t> x_;
    std::vector<uint64_t> z_;

    friend class StabilizerTableau;
};

struct MeasureOutcome {
    int outcome;         // +1 or -1
    bool deterministic;  // true when the state already fixed the value
};

enum class FusionType : uint8_t { XXZZ, XYYX, XZZX, YZZY, XYYZ };
enum class FusionBranch : uint8_t { Success, Failure };

// Pure-state stabilizer tableau: n commuting, independent generators on n
// qubits. The slow, trusted oracle every graph rule is checked against.
class StabilizerTableau {
  public:
    StabilizerTableau() : n_(0) {}
    explicit StabilizerTableau(uint32_t n);  // |+>^n

    uint32_t n() const { return n_; }
    const std::vector<PauliString>& generators() const { return gens_; }
    std::vector<PauliString>& mutable_generators() { return gens_; }
    PauliString& generator(uint32_t i) { return gens_[i]; }

    static StabilizerTableau all_zero(uint32_t n);  // |0>^n

    void apply_clifford(uint32_t q, const LocalClifford& c);
    void apply_cz(uint32_t a, uint32_t b);

    MeasureOutcome measure(const PauliString& p, std::optional<int> forced, Rng& rng);

    // Removes qubit q after a Z_q (or equivalent single-qubit) measurement has
    // left it disentangled; returns nothing, columns above q shift down by one.
    void remove_measured_qubit(uint32_t q);

    // Expectation of p: +1 / -1 if +-p is in the group, else 0.
    int expectation(const PauliString& p) const;

    bool commuting_and_independent() const;

    std::string to_text() const;
    static StabilizerTableau from_text(const std::string& text);

  private:
    uint32_t n_;
    std::vector<PauliString> gens_;
};

StabilizerTableau from_graph(const GraphState& g);

// Unique reduced row-echelon form over GF(2), columns ordered all-X then all-Z,
// signs carried through the row operations.
StabilizerTableau canonical_form(const StabilizerTableau& t);

bool groups_equal_mod_signs(const StabilizerTableau& a, const StabilizerTableau& b);

struct GraphFromTableau {
    GraphState graph;  // tags hold the extracted local Cliffords
};
GraphFromTableau to_graph(const StabilizerTableau& t);

// Gates applied before the standard fusion circuit to realize each fusion type,
// and the single-qubit bases measured on failure.
struct FusionSetup {
    LocalClifford pre_a;
    LocalClifford pre_b;
    Pauli failure_a;
    Pauli failure_b;
    Pauli success_a1, success_b1;  // first measured parity
    Pauli success_a2, success_b2;  // second measured parity
};
const FusionSetup& fusion_setup(FusionType t);

std::string to_string(FusionType t);
FusionType fusion_type_from_string(const std::string& s);

struct OracleFusion {
    StabilizerTableau tableau;  // qubits a and b removed
    int parity1;
    int parity2;
    bool deterministic1;
    bool deterministic2;
};

// Brute-force fusion: applies the type's pre-gates, measures the two standard
// parities (success) or the two single-qubit Z's (failure), then traces the
// fusion qubits out of the tableau.
OracleFusion oracle_fuse(const StabilizerTableau& t, uint32_t a, uint32_t b, FusionType type,
                         FusionBranch branch, std::optional<std::pair<int, int>> forced, Rng& rng);

// Success probability of the type's fusion on qubits a, b: always 0, 1/2 or 1.
double fusion_probability(const StabilizerTableau& t, uint32_t a, uint32_t b, FusionType type);

}  // namespace fusionsim
