#include "doctest.h"

#include <set>

#include "fusionsim/local_clifford.hpp"

using namespace fusionsim;

TEST_CASE("group has 24 elements closed under composition") {
    std::set<uint8_t> codes;
    for (uint8_t c = 0; c < 24; ++c) {
        codes.insert(LocalClifford::from_code(c).code());
    }
    CHECK(codes.size() == 24);
    for (uint8_t a = 0; a < 24; ++a) {
        for (uint8_t b = 0; b < 24; ++b) {
            LocalClifford prod = LocalClifford::from_code(a).compose(LocalClifford::from_code(b));
            CHECK(codes.count(prod.code()) == 1);
        }
    }
}

TEST_CASE("composition is associative") {
    for (uint8_t a = 0; a < 24; ++a) {
        for (uint8_t b = 0; b < 24; ++b) {
            for (uint8_t c = 0; c < 24; ++c) {
                LocalClifford ga = LocalClifford::from_code(a);
                LocalClifford gb = LocalClifford::from_code(b);
                LocalClifford gc = LocalClifford::from_code(c);
                CHECK(ga.compose(gb).compose(gc) == ga.compose(gb.compose(gc)));
            }
        }
    }
}

TEST_CASE("generator relations") {
    auto H = LocalClifford::h();
    auto R = LocalClifford::r();
    CHECK(H.compose(H).is_identity());
    CHECK(R.compose(R).compose(R).compose(R).is_identity());
    CHECK(R.compose(R) == LocalClifford::pauli_z());
    CHECK(R.compose(LocalClifford::r_dag()).is_identity());
}

TEST_CASE("pauli images match the gate table") {
    auto H = LocalClifford::h();
    CHECK(H.image(Pauli::X) == SignedPauli{Pauli::Z, false});
    CHECK(H.image(Pauli::Z) == SignedPauli{Pauli::X, false});
    CHECK(H.image(Pauli::Y) == SignedPauli{Pauli::Y, true});

    auto R = LocalClifford::r();
    CHECK(R.image(Pauli::X) == SignedPauli{Pauli::Y, false});
    CHECK(R.image(Pauli::Y) == SignedPauli{Pauli::X, true});
    CHECK(R.image(Pauli::Z) == SignedPauli{Pauli::Z, false});

    auto Q = LocalClifford::q();
    CHECK(Q.image(Pauli::X) == SignedPauli{Pauli::X, false});
    CHECK(Q.image(Pauli::Z) == SignedPauli{Pauli::Y, false});

    // K = RH cycles X -> Z -> Y -> X; K^dag cycles the other way.
    auto K = LocalClifford::k();
    CHECK(K.image(Pauli::X).letter == Pauli::Z);
    CHECK(K.image(Pauli::Z).letter == Pauli::Y);
    CHECK(K.image(Pauli::Y).letter == Pauli::X);
    auto Kd = LocalClifford::k_dag();
    CHECK(Kd.image(Pauli::X).letter == Pauli::Y);
    CHECK(Kd.image(Pauli::Y).letter == Pauli::Z);
    CHECK(Kd.image(Pauli::Z).letter == Pauli::X);
}

TEST_CASE("inverse and conj_inv") {
    for (uint8_t a = 0; a < 24; ++a) {
        LocalClifford g = LocalClifford::from_code(a);
        CHECK(g.compose(g.inverse()).is_identity());
        CHECK(g.inverse().compose(g).is_identity());
        for (Pauli p : {Pauli::X, Pauli::Y, Pauli::Z}) {
            // conj then conj_inv round-trips the letter and sign
            SignedPauli img = g.image(p);
            CHECK(g.conj_inv(img) == SignedPauli{p, false});
        }
    }
}

TEST_CASE("canonical words") {
    CHECK(LocalClifford::identity().word() == "I");
    CHECK(LocalClifford::h().word() == "H");
    CHECK(LocalClifford::r().word() == "R");
    // Composing H then R gives the word RH (rightmost letter acts first).
    CHECK(LocalClifford::r().compose(LocalClifford::h()).word() == "RH");
    CHECK(LocalClifford::k().word() == "RH");
    for (uint8_t a = 0; a < 24; ++a) {
        LocalClifford g = LocalClifford::from_code(a);
        CHECK(LocalClifford::from_word(g.word()) == g);
    }
}

TEST_CASE("words are shortest in the H/R alphabet") {
    // No strictly shorter word can compose to the same element.
    for (uint8_t a = 0; a < 24; ++a) {
        LocalClifford g = LocalClifford::from_code(a);
        size_t len = g.word() == "I" ? 0 : g.word().size();
        for (size_t shorter = 0; shorter < len; ++shorter) {
            size_t limit = size_t{1} << shorter;
            for (size_t mask = 0; mask < limit; ++mask) {
                std::string w;
                for (size_t i = 0; i < shorter; ++i) {
                    w.push_back((mask >> i) & 1 ? 'R' : 'H');
                }
                CHECK(LocalClifford::from_word(w) != g);
            }
        }
    }
}
