#include "fusionsim/local_clifford.hpp"

#include <cassert>
#include <stdexcept>
#include <vector>

namespace fusionsim {

char pauli_char(Pauli p) {
    switch (p) {
        case Pauli::X: return 'X';
        case Pauli::Y: return 'Y';
        case Pauli::Z: return 'Z';
    }
    return '?';
}

PauliProduct pauli_mul(Pauli a, Pauli b) {
    assert(a != b);
    // XY = iZ, YZ = iX, ZX = iY; reversed order picks up i^3.
    int ai = static_cast<int>(a), bi = static_cast<int>(b);
    Pauli third = static_cast<Pauli>(3 - ai - bi);
    bool cyclic = (bi == (ai + 1) % 3);
    return {cyclic ? 1 : 3, third};
}

namespace {

struct Element {
    SignedPauli img_x;
    SignedPauli img_z;
};

constexpr int kPairIndex[3][3] = {
    {-1, 0, 1},   // X -> {Y, Z}
    {2, -1, 3},   // Y -> {X, Z}
    {4, 5, -1},   // Z -> {X, Y}
};

uint8_t encode(const Element& e) {
    int pi = kPairIndex[static_cast<int>(e.img_x.letter)][static_cast<int>(e.img_z.letter)];
    assert(pi >= 0);
    return static_cast<uint8_t>(pi * 4 + (e.img_x.neg ? 2 : 0) + (e.img_z.neg ? 1 : 0));
}

Element decode(uint8_t code) {
    static constexpr Pauli kPairs[6][2] = {
        {Pauli::X, Pauli::Y}, {Pauli::X, Pauli::Z}, {Pauli::Y, Pauli::X},
        {Pauli::Y, Pauli::Z}, {Pauli::Z, Pauli::X}, {Pauli::Z, Pauli::Y},
    };
    Element e;
    e.img_x = {kPairs[code / 4][0], (code & 2) != 0};
    e.img_z = {kPairs[code / 4][1], (code & 1) != 0};
    return e;
}

SignedPauli apply(const Element& e, SignedPauli p) {
    SignedPauli out;
    switch (p.letter) {
        case Pauli::X: out = e.img_x; break;
        case Pauli::Z: out = e.img_z; break;
        case Pauli::Y: {
            // Y = i X Z, so image(Y) = i * image(X) * image(Z).
            PauliProduct prod = pauli_mul(e.img_x.letter, e.img_z.letter);
            assert((prod.phase_mod4 & 1) == 1);
            out.letter = prod.letter;
            out.neg = e.img_x.neg ^ e.img_z.neg ^ (prod.phase_mod4 == 1);
            break;
        }
    }
    out.neg ^= p.neg;
    return out;
}

struct Tables {
    uint8_t compose[24][24];
    uint8_t inverse[24];
    std::string words[24];

    Tables() {
        for (int a = 0; a < 24; ++a) {
            Element ea = decode(static_cast<uint8_t>(a));
            for (int b = 0; b < 24; ++b) {
                Element eb = decode(static_cast<uint8_t>(b));
                Element c{apply(ea, eb.img_x), apply(ea, eb.img_z)};
                compose[a][b] = encode(c);
            }
        }
        uint8_t id = encode({{Pauli::X, false}, {Pauli::Z, false}});
        for (int a = 0; a < 24; ++a) {
            for (int b = 0; b < 24; ++b) {
                if (compose[a][b] == id) {
                    inverse[a] = static_cast<uint8_t>(b);
                }
            }
        }
        // Shortest-then-lexicographic H/R words, found by enumerating words by
        // length; a word's element is the left-to-right operator product
        // (rightmost letter acts first).
        uint8_t h = encode({{Pauli::Z, false}, {Pauli::X, false}});
        uint8_t r = encode({{Pauli::Y, false}, {Pauli::Z, false}});
        int found = 0;
        words[id] = "I";
        ++found;
        std::vector<std::pair<std::string, uint8_t>> layer = {{"", id}};
        while (found < 24) {
            std::vector<std::pair<std::string, uint8_t>> next;
            for (const auto& [w, e] : layer) {
                for (char c : {'H', 'R'}) {
                    uint8_t g = (c == 'H') ? h : r;
                    // Extend on the right: new gate acts first.
                    next.emplace_back(w + c, compose[e][g]);
                }
            }
            for (const auto& [w, e] : next) {
                if (words[e].empty()) {
                    words[e] = w;
                    ++found;
                }
            }
            layer = std::move(next);
        }
    }
};

const Tables& tables() {
    static const Tables t;
    return t;
}

}  // namespace


LocalClifford LocalClifford::identity() { return LocalClifford(identity_code()); }
LocalClifford LocalClifford::h() { return LocalClifford(encode({{Pauli::Z, false}, {Pauli::X, false}})); }
LocalClifford LocalClifford::r() { return LocalClifford(encode({{Pauli::Y, false}, {Pauli::Z, false}})); }
LocalClifford LocalClifford::r_dag() { return LocalClifford(encode({{Pauli::Y, true}, {Pauli::Z, false}})); }
LocalClifford LocalClifford::q() { return LocalClifford(encode({{Pauli::X, false}, {Pauli::Y, false}})); }
LocalClifford LocalClifford::q_dag() { return LocalClifford(encode({{Pauli::X, false}, {Pauli::Y, true}})); }
LocalClifford LocalClifford::pauli_x() { return LocalClifford(encode({{Pauli::X, false}, {Pauli::Z, true}})); }
LocalClifford LocalClifford::pauli_y() { return LocalClifford(encode({{Pauli::X, true}, {Pauli::Z, true}})); }
LocalClifford LocalClifford::pauli_z() { return LocalClifford(encode({{Pauli::X, true}, {Pauli::Z, false}})); }
LocalClifford LocalClifford::k() { return r().compose(h()); }
LocalClifford LocalClifford::k_dag() { return h().compose(r_dag()); }

LocalClifford LocalClifford::from_code(uint8_t code) {
    if (code >= 24) {
        throw std::invalid_argument("LocalClifford code out of range");
    }
    return LocalClifford(code);
}

LocalClifford LocalClifford::from_word(const std::string& word) {
    LocalClifford out = identity();
    for (char c : word) {
        switch (c) {
            case 'I': break;
            case 'H': out = out.compose(h()); break;
            case 'R': out = out.compose(r()); break;
            default: throw std::invalid_argument("bad Clifford word character");
        }
    }
    return out;
}

SignedPauli LocalClifford::image(Pauli p) const { return image(SignedPauli{p, false}); }

SignedPauli LocalClifford::image(SignedPauli p) const { return apply(decode(code_), p); }

SignedPauli LocalClifford::conj_inv(Pauli p) const { return conj_inv(SignedPauli{p, false}); }

SignedPauli LocalClifford::conj_inv(SignedPauli p) const { return inverse().image(p); }

LocalClifford LocalClifford::compose(const LocalClifford& rhs) const {
    return LocalClifford(tables().compose[code_][rhs.code_]);
}

LocalClifford LocalClifford::inverse() const { return LocalClifford(tables().inverse[code_]); }

const std::string& LocalClifford::word() const { return tables().words[code_]; }

}  // namespace fusionsim
