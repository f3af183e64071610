#pragma once

#include <array>
#include <cstdint>
#include <string>

namespace fusionsim {

enum class Pauli : uint8_t { X = 0, Y = 1, Z = 2 };

char pauli_char(Pauli p);

struct SignedPauli {
    Pauli letter;
    bool neg = false;

    bool operator==(const SignedPauli&) const = default;
};

// Product of two single-qubit Paulis: a*b = i^phase_mod4 * letter (identity never
// arises here since callers multiply distinct letters).
struct PauliProduct {
    int phase_mod4;  // exponent of i
    Pauli letter;
};
PauliProduct pauli_mul(Pauli a, Pauli b);

// One of the 24 single-qubit Clifford gates modulo global phase, stored as the
// signed permutation it induces on {X, Y, Z} under conjugation U p U^dag.
// Canonical display words use the H/R alphabet (R = sqrt(Z) = diag(1, i)),
// shortest word first, ties broken lexicographically.
class LocalClifford {
  public:
    LocalClifford() : code_(identity_code()) {}

    static LocalClifford identity();
    static LocalClifford h();        // X <-> Z
    static LocalClifford r();        // sqrt(Z): X -> Y
    static LocalClifford r_dag();
    static LocalClifford q();        // sqrt(X): Z -> Y
    static LocalClifford q_dag();
    static LocalClifford pauli_x();
    static LocalClifford pauli_y();
    static LocalClifford pauli_z();
    static LocalClifford k();        // R*H: X -> Z -> Y -> X
    static LocalClifford k_dag();    // H*R_dag: X -> Y -> Z -> X

    static LocalClifford from_code(uint8_t code);
    // Parses a word over {I, H, R} (e.g. "RH" = apply H first, then R).
    static LocalClifford from_word(const std::string& word);

    uint8_t code() const { return code_; }
    bool is_identity() const { return code_ == identity_code(); }

    SignedPauli image(Pauli p) const;            // U p U^dag
    SignedPauli image(SignedPauli p) const;
    SignedPauli conj_inv(Pauli p) const;         // U^dag p U
    SignedPauli conj_inv(SignedPauli p) const;

    // (*this) * rhs as operators: rhs acts first.
    LocalClifford compose(const LocalClifford& rhs) const;
    LocalClifford inverse() const;

    // Canonical H/R word; "I" for the identity.
    const std::string& word() const;

    bool operator==(const LocalClifford&) const = default;

  private:
    explicit LocalClifford(uint8_t code) : code_(code) {}
    // pair (X, Z) with positive signs in the signed-permutation encoding
    static constexpr uint8_t identity_code() { return 4; }
    uint8_t code_;
};

}  // namespace fusionsim
