#include "fusionsim/tableau.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace fusionsim {

namespace {
uint32_t words_for(uint32_t n) { return (n + 63) / 64; }
}  // namespace

PauliString::PauliString(uint32_t n) : n_(n), neg_(false), x_(words_for(n), 0), z_(words_for(n), 0) {}

PauliString PauliString::single(uint32_t n, uint32_t q, Pauli p, bool neg) {
    PauliString s(n);
    s.set_letter(q, p);
    s.neg_ = neg;
    return s;
}

bool PauliString::is_identity_bits() const {
    for (size_t i = 0; i < x_.size(); ++i) {
        if (x_[i] || z_[i]) {
            return false;
        }
    }
    return true;
}

bool PauliString::commutes_with(const PauliString& other) const {
    assert(n_ == other.n_);
    int parity = 0;
    for (size_t i = 0; i < x_.size(); ++i) {
        parity ^= __builtin_parityll(x_[i] & other.z_[i]) ^ __builtin_parityll(z_[i] & other.x_[i]);
    }
    return parity == 0;
}

void PauliString::mul(const PauliString& other) {
    assert(n_ == other.n_);
    // i-exponent of the slot-wise products, Aaronson-Gottesman style.
    int phase = (neg_ ? 2 : 0) + (other.neg_ ? 2 : 0);
    for (uint32_t q = 0; q < n_; ++q) {
        bool x1 = x_bit(q), z1 = z_bit(q), x2 = other.x_bit(q), z2 = other.z_bit(q);
        if (!x1 && !z1) {
            continue;
        }
        if (x1 && z1) {
            phase += (z2 ? 1 : 0) - (x2 ? 1 : 0);
        } else if (x1) {
            phase += z2 ? (x2 ? 1 : -1) : 0;
        } else {
            phase += x2 ? (z2 ? -1 : 1) : 0;
        }
    }
    phase = ((phase % 4) + 4) % 4;
    assert(phase % 2 == 0);
    neg_ = (phase == 2);
    for (size_t i = 0; i < x_.size(); ++i) {
        x_[i] ^= other.x_[i];
        z_[i] ^= other.z_[i];
    }
}

void PauliString::conjugate_slot(uint32_t q, const LocalClifford& c) {
    std::optional<Pauli> p = letter(q);
    if (!p) {
        return;
    }
    SignedPauli img = c.image(*p);
    set_letter(q, img.letter);
    neg_ ^= img.neg;
}

void PauliString::conjugate_cz(uint32_t a, uint32_t b) {
    bool xa = x_bit(a), za = z_bit(a), xb = x_bit(b), zb = z_bit(b);
    neg_ ^= xa && xb && (za != zb);
    set_z(a, za ^ xb);
    set_z(b, zb ^ xa);
}

std::optional<Pauli> PauliString::letter(uint32_t q) const {
    bool x = x_bit(q), z = z_bit(q);
    if (!x && !z) {
        return std::nullopt;
    }
    if (x && z) {
        return Pauli::Y;
    }
    return x ? Pauli::X : Pauli::Z;
}

void PauliString::set_letter(uint32_t q, std::optional<Pauli> p) {
    bool x = false, z = false;
    if (p) {
        x = (*p != Pauli::Z);
        z = (*p != Pauli::X);
    }
    set_x(q, x);
    set_z(q, z);
}

std::string PauliString::to_text() const {
    std::string out;
    out.reserve(n_ + 1);
    out.push_back(neg_ ? '-' : '+');
    for (uint32_t q = 0; q < n_; ++q) {
        std::optional<Pauli> p = letter(q);
        out.push_back(p ? pauli_char(*p) : 'I');
    }
    return out;
}

PauliString PauliString::from_text(const std::string& line) {
    if (line.empty() || (line[0] != '+' && line[0] != '-')) {
        throw std::invalid_argument("pauli string must start with '+' or '-'");
    }
    PauliString s(static_cast<uint32_t>(line.size() - 1));
    s.neg_ = (line[0] == '-');
    for (uint32_t q = 0; q + 1 < line.size(); ++q) {
        switch (line[q + 1]) {
            case 'I': break;
            case 'X': s.set_letter(q, Pauli::X); break;
            case 'Y': s.set_letter(q, Pauli::Y); break;
            case 'Z': s.set_letter(q, Pauli::Z); break;
            default: throw std::invalid_argument("bad pauli character");
        }
    }
    return s;
}

bool PauliString::bits_less(const PauliString& other) const {
    // Chunked big-endian-by-qubit comparison, X bits before Z bits.
    for (uint32_t q = 0; q < n_; ++q) {
        if (x_bit(q) != other.x_bit(q)) {
            return x_bit(q);
        }
    }
    for (uint32_t q = 0; q < n_; ++q) {
        if (z_bit(q) != other.z_bit(q)) {
            return z_bit(q);
        }
    }
    return false;
}

bool PauliString::bits_equal(const PauliString& other) const {
    return x_ == other.x_ && z_ == other.z_;
}

StabilizerTableau::StabilizerTableau(uint32_t n) : n_(n) {
    gens_.reserve(n);
    for (uint32_t q = 0; q < n; ++q) {
        gens_.push_back(PauliString::single(n, q, Pauli::X));
    }
}

StabilizerTableau StabilizerTableau::all_zero(uint32_t n) {
    StabilizerTableau t(n);
    for (uint32_t q = 0; q < n; ++q) {
        t.gens_[q] = PauliString::single(n, q, Pauli::Z);
    }
    return t;
}

void StabilizerTableau::apply_clifford(uint32_t q, const LocalClifford& c) {
    for (PauliString& g : gens_) {
        g.conjugate_slot(q, c);
    }
}

void StabilizerTableau::apply_cz(uint32_t a, uint32_t b) {
    for (PauliString& g : gens_) {
        g.conjugate_cz(a, b);
    }
}

MeasureOutcome StabilizerTableau::measure(const PauliString& p, std::optional<int> forced,
                                          Rng& rng) {
    if (p.is_identity_bits()) {
        throw std::invalid_argument("cannot measure the identity");
    }
    size_t pivot = gens_.size();
    for (size_t i = 0; i < gens_.size(); ++i) {
        if (!gens_[i].commutes_with(p)) {
            pivot = i;
            break;
        }
    }
    if (pivot == gens_.size()) {
        int e = expectation(p);
        assert(e != 0);
        if (forced && *forced != e) {
            throw contradiction_error("forced outcome contradicts deterministic measurement");
        }
        return {e, true};
    }
    for (size_t i = pivot + 1; i < gens_.size(); ++i) {
        if (!gens_[i].commutes_with(p)) {
            gens_[i].mul(gens_[pivot]);
        }
    }
    int outcome = forced ? *forced : (rng.fair_coin() ? 1 : -1);
    gens_[pivot] = p;
    if (outcome == -1) {
        gens_[pivot].set_negative(!gens_[pivot].negative());
    }
    return {outcome, false};
}

int StabilizerTableau::expectation(const PauliString& p) const {
    StabilizerTableau canon = canonical_form(*this);
    PauliString acc(n_);
    for (const PauliString& row : canon.gens_) {
        // Pivot of a reduced row: first set position in (X..,Z..) order.
        uint32_t pivot_q = 0;
        bool pivot_is_x = true, found = false;
        for (uint32_t q = 0; q < n_ && !found; ++q) {
            if (row.x_bit(q)) {
                pivot_q = q;
                pivot_is_x = true;
                found = true;
            }
        }
        for (uint32_t q = 0; q < n_ && !found; ++q) {
            if (row.z_bit(q)) {
                pivot_q = q;
                pivot_is_x = false;
                found = true;
            }
        }
        assert(found);
        bool want = pivot_is_x ? p.x_bit(pivot_q) : p.z_bit(pivot_q);
        bool have = pivot_is_x ? acc.x_bit(pivot_q) : acc.z_bit(pivot_q);
        if (want != have) {
            acc.mul(row);
        }
    }
    if (!acc.bits_equal(p)) {
        return 0;
    }
    return acc.negative() == p.negative() ? 1 : -1;
}

void StabilizerTableau::remove_measured_qubit(uint32_t q) {
    // All generators commute with Z_q exactly when the group contains +-Z_q,
    // i.e. the qubit sits in a definite Z eigenstate; the n-1 generators left
    // after dropping one z_q-row span the state on the other qubits.
    size_t keep = gens_.size();
    for (size_t i = 0; i < gens_.size(); ++i) {
        if (gens_[i].x_bit(q)) {
            throw invalid_state_error("qubit not measured in Z; cannot remove");
        }
        if (gens_[i].z_bit(q)) {
            if (keep == gens_.size()) {
                keep = i;
            } else {
                gens_[i].mul(gens_[keep]);
            }
        }
    }
    if (keep == gens_.size()) {
        throw invalid_state_error("no generator supports the removed qubit");
    }
    gens_.erase(gens_.begin() + static_cast<long>(keep));
    uint32_t m = n_ - 1;
    for (PauliString& g : gens_) {
        PauliString shrunk(m);
        shrunk.set_negative(g.negative());
        for (uint32_t c = 0; c < n_; ++c) {
            if (c == q) {
                continue;
            }
            uint32_t d = c < q ? c : c - 1;
            shrunk.set_x(d, g.x_bit(c));
            shrunk.set_z(d, g.z_bit(c));
        }
        g = std::move(shrunk);
    }
    n_ = m;
}

bool StabilizerTableau::commuting_and_independent() const {
    for (size_t i = 0; i < gens_.size(); ++i) {
        for (size_t j = i + 1; j < gens_.size(); ++j) {
            if (!gens_[i].commutes_with(gens_[j])) {
                return false;
            }
        }
    }
    try {
        canonical_form(*this);
    } catch (const invalid_state_error&) {
        return false;
    }
    return true;
}

std::string StabilizerTableau::to_text() const {
    std::string out;
    for (const PauliString& g : gens_) {
        out += g.to_text();
        out += '\n';
    }
    return out;
}

StabilizerTableau StabilizerTableau::from_text(const std::string& text) {
    StabilizerTableau t;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        t.gens_.push_back(PauliString::from_text(line));
    }
    if (t.gens_.empty()) {
        throw std::invalid_argument("empty tableau text");
    }
    t.n_ = t.gens_.front().n();
    for (const PauliString& g : t.gens_) {
        if (g.n() != t.n_) {
            throw std::invalid_argument("ragged tableau text");
        }
    }
    return t;
}

StabilizerTableau from_graph(const GraphState& g) {
    std::vector<uint32_t> verts = g.alive_vertices();
    uint32_t n = static_cast<uint32_t>(verts.size());
    std::vector<uint32_t> col(g.vertex_count(), 0);
    for (uint32_t i = 0; i < n; ++i) {
        col[verts[i]] = i;
    }
    StabilizerTableau t(n);
    for (uint32_t i = 0; i < n; ++i) {
        PauliString row(n);
        row.set_letter(i, Pauli::X);
        g.neighborhood(verts[i]).for_each([&](uint32_t w) { row.set_letter(col[w], Pauli::Z); });
        t.generator(i) = row;
    }
    for (uint32_t i = 0; i < n; ++i) {
        const LocalClifford& c = g.clifford(verts[i]);
        if (!c.is_identity()) {
            t.apply_clifford(i, c);
        }
    }
    return t;
}

StabilizerTableau canonical_form(const StabilizerTableau& t) {
    StabilizerTableau c = t;
    auto& rows = c.mutable_generators();
    uint32_t n = c.n();
    size_t rank = 0;
    auto sweep = [&](bool x_block) {
        for (uint32_t q = 0; q < n; ++q) {
            size_t pivot = rows.size();
            for (size_t i = rank; i < rows.size(); ++i) {
                bool bit = x_block ? rows[i].x_bit(q) : rows[i].z_bit(q);
                if (bit) {
                    pivot = i;
                    break;
                }
            }
            if (pivot == rows.size()) {
                continue;
            }
            std::swap(rows[rank], rows[pivot]);
            for (size_t i = 0; i < rows.size(); ++i) {
                if (i == rank) {
                    continue;
                }
                bool bit = x_block ? rows[i].x_bit(q) : rows[i].z_bit(q);
                if (bit) {
                    rows[i].mul(rows[rank]);
                }
            }
            ++rank;
        }
    };
    sweep(true);
    sweep(false);
    if (rank != rows.size()) {
        throw invalid_state_error("tableau is rank-deficient");
    }
    return c;
}

bool groups_equal_mod_signs(const StabilizerTableau& a, const StabilizerTableau& b) {
    if (a.n() != b.n()) {
        throw std::invalid_argument("tableau size mismatch");
    }
    StabilizerTableau sa = a, sb = b;
    for (uint32_t i = 0; i < sa.n(); ++i) {
        sa.generator(i).set_negative(false);
        sb.generator(i).set_negative(false);
    }
    StabilizerTableau ca = canonical_form(sa);
    StabilizerTableau cb = canonical_form(sb);
    for (uint32_t i = 0; i < ca.n(); ++i) {
        if (!ca.generator(i).bits_equal(cb.generator(i))) {
            return false;
        }
    }
    return true;
}

GraphFromTableau to_graph(const StabilizerTableau& t) {
    StabilizerTableau w = t;
    uint32_t n = w.n();
    std::vector<LocalClifford> applied(n);
    auto h_col = [&](uint32_t q) {
        w.apply_clifford(q, LocalClifford::h());
        applied[q] = LocalClifford::h().compose(applied[q]);
    };
    auto r_col = [&](uint32_t q) {
        w.apply_clifford(q, LocalClifford::r());
        applied[q] = LocalClifford::r().compose(applied[q]);
    };

    auto x_rank_reduce = [&]() -> size_t {
        auto& rows = w.mutable_generators();
        size_t rank = 0;
        for (uint32_t q = 0; q < n; ++q) {
            size_t pivot = rows.size();
            for (size_t i = rank; i < rows.size(); ++i) {
                if (rows[i].x_bit(q)) {
                    pivot = i;
                    break;
                }
            }
            if (pivot == rows.size()) {
                continue;
            }
            std::swap(rows[rank], rows[pivot]);
            for (size_t i = 0; i < rows.size(); ++i) {
                if (i != rank && rows[i].x_bit(q)) {
                    rows[i].mul(rows[rank]);
                }
            }
            ++rank;
        }
        return rank;
    };

    // Hadamards turn pure-Z rows into rows with X support until the X block
    // has full rank.
    for (uint32_t guard = 0; guard <= 2 * n + 4; ++guard) {
        size_t rank = x_rank_reduce();
        if (rank == n) {
            break;
        }
        if (guard == 2 * n + 4) {
            throw invalid_state_error("to_graph failed to complete the X block");
        }
        const PauliString& row = w.generators()[rank];
        std::vector<uint8_t> is_pivot(n, 0);
        for (size_t i = 0; i < rank; ++i) {
            for (uint32_t q = 0; q < n; ++q) {
                if (w.generators()[i].x_bit(q)) {
                    is_pivot[q] = 1;
                    break;
                }
            }
        }
        uint32_t chosen = n;
        for (uint32_t q = 0; q < n; ++q) {
            if (row.z_bit(q) && !is_pivot[q]) {
                chosen = q;
                break;
            }
        }
        if (chosen == n) {
            for (uint32_t q = 0; q < n; ++q) {
                if (row.z_bit(q)) {
                    chosen = q;
                    break;
                }
            }
        }
        if (chosen == n) {
            throw invalid_state_error("to_graph met an identity row");
        }
        h_col(chosen);
    }

    // X block is invertible; reorder rows so X = identity.
    auto& rows = w.mutable_generators();
    for (uint32_t q = 0; q < n; ++q) {
        size_t pivot = rows.size();
        for (size_t i = q; i < rows.size(); ++i) {
            if (rows[i].x_bit(q)) {
                pivot = i;
                break;
            }
        }
        assert(pivot != rows.size());
        std::swap(rows[q], rows[pivot]);
        for (size_t i = 0; i < rows.size(); ++i) {
            if (i != q && rows[i].x_bit(q)) {
                rows[i].mul(rows[q]);
            }
        }
    }

    // Clear the Z diagonal with R gates, then read off the adjacency.
    for (uint32_t q = 0; q < n; ++q) {
        if (rows[q].z_bit(q)) {
            r_col(q);
        }
    }
    GraphState g(n);
    for (uint32_t i = 0; i < n; ++i) {
        for (uint32_t j = i + 1; j < n; ++j) {
            bool zij = rows[i].z_bit(j);
            assert(zij == rows[j].z_bit(i));
            if (zij) {
                g.add_edge(i, j);
            }
        }
        g.set_clifford(i, applied[i].inverse());
    }
    return {std::move(g)};
}

const FusionSetup& fusion_setup(FusionType t) {
    static const FusionSetup table[5] = {
        // XXZZ: standard fusion.
        {LocalClifford::identity(), LocalClifford::identity(), Pauli::Z, Pauli::Z, Pauli::X,
         Pauli::X, Pauli::Z, Pauli::Z},
        // XYYX: Q_A K_B.
        {LocalClifford::q(), LocalClifford::k(), Pauli::Y, Pauli::X, Pauli::X, Pauli::Y, Pauli::Y,
         Pauli::X},
        // XZZX: 1_A H_B.
        {LocalClifford::identity(), LocalClifford::h(), Pauli::Z, Pauli::X, Pauli::X, Pauli::Z,
         Pauli::Z, Pauli::X},
        // YZZY: R_A Kdag_B.
        {LocalClifford::r(), LocalClifford::k_dag(), Pauli::Z, Pauli::Y, Pauli::Y, Pauli::Z,
         Pauli::Z, Pauli::Y},
        // XYYZ: Q_A R_B.
        {LocalClifford::q(), LocalClifford::r(), Pauli::Y, Pauli::Z, Pauli::X, Pauli::Y, Pauli::Y,
         Pauli::Z},
    };
    return table[static_cast<size_t>(t)];
}

std::string to_string(FusionType t) {
    switch (t) {
        case FusionType::XXZZ: return "xxzz";
        case FusionType::XYYX: return "xyyx";
        case FusionType::XZZX: return "xzzx";
        case FusionType::YZZY: return "yzzy";
        case FusionType::XYYZ: return "xyyz";
    }
    return "?";
}

FusionType fusion_type_from_string(const std::string& s) {
    if (s == "xxzz") return FusionType::XXZZ;
    if (s == "xyyx") return FusionType::XYYX;
    if (s == "xzzx") return FusionType::XZZX;
    if (s == "yzzy") return FusionType::YZZY;
    if (s == "xyyz") return FusionType::XYYZ;
    throw std::invalid_argument("unknown fusion type: " + s);
}

OracleFusion oracle_fuse(const StabilizerTableau& t, uint32_t a, uint32_t b, FusionType type,
                         FusionBranch branch, std::optional<std::pair<int, int>> forced, Rng& rng) {
    if (a == b || a >= t.n() || b >= t.n()) {
        throw std::invalid_argument("bad fusion qubits");
    }
    StabilizerTableau w = t;
    const FusionSetup& setup = fusion_setup(type);
    if (!setup.pre_a.is_identity()) {
        w.apply_clifford(a, setup.pre_a);
    }
    if (!setup.pre_b.is_identity()) {
        w.apply_clifford(b, setup.pre_b);
    }
    PauliString p1(w.n()), p2(w.n());
    if (branch == FusionBranch::Success) {
        p1.set_letter(a, Pauli::X);
        p1.set_letter(b, Pauli::X);
        p2.set_letter(a, Pauli::Z);
        p2.set_letter(b, Pauli::Z);
    } else {
        p1.set_letter(a, Pauli::Z);
        p2.set_letter(b, Pauli::Z);
    }
    MeasureOutcome m1 = w.measure(p1, forced ? std::optional<int>(forced->first) : std::nullopt, rng);
    MeasureOutcome m2 = w.measure(p2, forced ? std::optional<int>(forced->second) : std::nullopt, rng);
    if (branch == FusionBranch::Success) {
        // The pair is now in a Bell state uncorrelated with the rest; one Z
        // measurement splits it into a product so both qubits can be removed.
        w.measure(PauliString::single(w.n(), a, Pauli::Z), std::nullopt, rng);
    }
    uint32_t hi = std::max(a, b), lo = std::min(a, b);
    w.remove_measured_qubit(hi);
    w.remove_measured_qubit(lo);
    return {std::move(w), m1.outcome, m2.outcome, m1.deterministic, m2.deterministic};
}

double fusion_probability(const StabilizerTableau& t, uint32_t a, uint32_t b, FusionType type) {
    if (a == b || a >= t.n() || b >= t.n()) {
        throw std::invalid_argument("bad fusion qubits");
    }
    // p_success = (1 - <U^dag Z_a Z_b U>)/2: the standard analyzer distinguishes
    // exactly the odd-parity Bell states.
    const FusionSetup& setup = fusion_setup(type);
    SignedPauli sa = setup.pre_a.conj_inv(Pauli::Z);
    SignedPauli sb = setup.pre_b.conj_inv(Pauli::Z);
    PauliString p(t.n());
    p.set_letter(a, sa.letter);
    p.set_letter(b, sb.letter);
    p.set_negative(sa.neg != sb.neg);
    int e = t.expectation(p);
    return (1.0 - e) / 2.0;
}

}  // namespace fusionsim
