#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ftv/reps.hpp"

using ftv::ArtinRep;
using ftv::CycElem;
using ftv::GroupElem;
using ftv::Matrix;
using ftv::RepLabel;

namespace {
std::uint64_t rng_state = 0x452821e638d01377ull;
std::int64_t rnd(std::int64_t lo, std::int64_t hi) {
    rng_state ^= rng_state << 13;
    rng_state ^= rng_state >> 7;
    rng_state ^= rng_state << 17;
    return lo + static_cast<std::int64_t>(rng_state % static_cast<std::uint64_t>(hi - lo + 1));
}

GroupElem random_elem(std::int64_t p, int n) {
    std::int64_t pn = 1;
    for (int i = 0; i < n; ++i) pn *= p;
    std::int64_t u = 0;
    do u = rnd(1, pn - 1);
    while (u % p == 0);
    return GroupElem(p, n, u, rnd(0, pn - 1));
}

bool matrices_equal(const Matrix<CycElem>& a, const Matrix<CycElem>& b) {
    if (a.rows != b.rows || a.cols != b.cols) return false;
    for (std::size_t i = 0; i < a.a.size(); ++i)
        if (a.a[i] != b.a[i]) return false;
    return true;
}
}  // namespace

TEST_CASE("irreducible counts and dimensions") {
    auto r31 = ftv::enumerate_irreps(3, 1, 40);
    REQUIRE(r31.size() == 3);
    CHECK(r31[0].dim() == 1);
    CHECK(r31[1].dim() == 1);
    CHECK(r31[2].dim() == 2);

    auto r51 = ftv::enumerate_irreps(5, 1, 40);
    REQUIRE(r51.size() == 5);  // four psi plus one theta_1
    int theta_count = 0;
    std::int64_t sum = 0;
    for (const auto& r : r51) {
        sum += static_cast<std::int64_t>(r.dim()) * r.dim();
        if (r.label().theta_level > 0) ++theta_count;
    }
    CHECK(sum == 20);
    CHECK(theta_count == 1);

    auto r32 = ftv::enumerate_irreps(3, 2, 40);
    std::int64_t sum32 = 0;
    for (const auto& r : r32) sum32 += static_cast<std::int64_t>(r.dim()) * r.dim();
    CHECK(sum32 == 54);
}

TEST_CASE("matrix_of is multiplicative") {
    for (auto [p, n, m] : {std::tuple<std::int64_t, int, int>{3, 2, 2}, {3, 2, 1}, {5, 1, 1}}) {
        ArtinRep rep(p, n, 40, RepLabel{1, n > 1 ? 1 : 0, m});
        for (int trial = 0; trial < 100; ++trial) {
            GroupElem g1 = random_elem(p, n), g2 = random_elem(p, n);
            CHECK(matrices_equal(rep.matrix_of(compose(g1, g2)),
                                 mat_mul(rep.matrix_of(g1), rep.matrix_of(g2))));
        }
    }
}

TEST_CASE("character values") {
    // tr theta_1((1,1)) = zeta + zeta^2 = -1 at p = 3
    ArtinRep theta(3, 1, 40, RepLabel{0, 0, 1});
    CHECK(theta.character(GroupElem(3, 1, 1, 1)) == CycElem::from_integer(3, 1, 40, -1));
    // character equals the trace of matrix_of on random elements
    ArtinRep rep(5, 2, 40, RepLabel{2, 1, 1});
    for (int trial = 0; trial < 20; ++trial) {
        GroupElem g = random_elem(5, 2);
        Matrix<CycElem> m = rep.matrix_of(g);
        CycElem tr = CycElem::zero(5, 2, 40);
        for (int i = 0; i < m.rows; ++i) tr = tr + m.at(i, i);
        CHECK(tr == rep.character(g));
    }
}

TEST_CASE("specific induced matrices") {
    ArtinRep theta(3, 1, 40, RepLabel{0, 0, 1});
    // (1,1) acts by diag(zeta, zeta^2) on the basis (e_1, e_2)
    Matrix<CycElem> d = theta.matrix_of(GroupElem(3, 1, 1, 1));
    CHECK(d.at(0, 0) == CycElem::zeta_pow(3, 1, 40, 1));
    CHECK(d.at(1, 1) == CycElem::zeta_pow(3, 1, 40, 2));
    CHECK(d.at(0, 1).is_zero());
    CHECK(d.at(1, 0).is_zero());
    // (2,0) is the basis swap
    Matrix<CycElem> s = theta.matrix_of(GroupElem(3, 1, 2, 0));
    CHECK(s.at(0, 0).is_zero());
    CHECK(s.at(1, 1).is_zero());
    CHECK(s.at(1, 0) == CycElem::one(3, 1, 40));
    CHECK(s.at(0, 1) == CycElem::one(3, 1, 40));
}

TEST_CASE("contragredient") {
    // psi = omega at p = 5: dual is omega^3
    ArtinRep omega(5, 1, 40, RepLabel{1, 0, 0});
    ArtinRep dual = omega.contragredient();
    CHECK(dual.label().tame == 3);
    for (std::int64_t u = 1; u < 5; ++u)
        CHECK(dual.psi_value(u) == omega.psi_value(u).invert());
    // trivial character is self-dual
    ArtinRep triv(5, 1, 40, RepLabel{0, 0, 0});
    CHECK(triv.contragredient().label() == triv.label());
    // character of the dual is chi(g^{-1}), theta_2 psi at p = 3
    ArtinRep rep(3, 2, 40, RepLabel{1, 1, 2});
    ArtinRep rep_dual = rep.contragredient();
    for (int trial = 0; trial < 20; ++trial) {
        GroupElem g = random_elem(3, 2);
        CHECK(rep_dual.character(g) == rep.character(g.inverse()));
    }
    // involution: (eta*)* has the character of eta
    ArtinRep back = rep_dual.contragredient();
    for (int trial = 0; trial < 10; ++trial) {
        GroupElem g = random_elem(3, 2);
        CHECK(back.character(g) == rep.character(g));
    }
}

TEST_CASE("inertia invariants") {
    ftv::DecompData dd2 = ftv::decomposition_data(2, 3, 1);
    ArtinRep triv(3, 1, 40, RepLabel{0, 0, 0});
    CHECK(ftv::inertia_invariants_dim(triv, dd2) == 1);
    ArtinRep theta(3, 1, 40, RepLabel{0, 0, 1});
    CHECK(ftv::inertia_invariants_dim(theta, dd2) == 0);
    // all theta-type reps have trivial inertia invariants at q != p
    for (auto [p, n] : {std::pair<std::int64_t, int>{3, 2}, {5, 1}, {5, 2}}) {
        for (const ArtinRep& rep : ftv::enumerate_irreps(p, n, 40)) {
            for (std::int64_t q : {2, 7, 11}) {
                if (q == p) continue;
                ftv::DecompData dd = ftv::decomposition_data(q, p, n);
                int expect = rep.label().theta_level == 0 ? 1 : 0;
                CHECK(ftv::inertia_invariants_dim(rep, dd) == expect);
            }
        }
    }
}

TEST_CASE("complex conjugation signs") {
    ArtinRep triv(5, 1, 40, RepLabel{0, 0, 0});
    CHECK(ftv::complex_conjugation_signs(triv) == std::pair<int, int>{1, 0});
    ArtinRep omega(5, 1, 40, RepLabel{1, 0, 0});
    CHECK(ftv::complex_conjugation_signs(omega) == std::pair<int, int>{0, 1});
    ArtinRep theta(3, 1, 40, RepLabel{0, 0, 1});
    CHECK(ftv::complex_conjugation_signs(theta) == std::pair<int, int>{1, 1});
    // theta-type signs are phi(p^m)/2 each and match the dual
    for (const ArtinRep& rep : ftv::enumerate_irreps(5, 2, 40)) {
        auto s = ftv::complex_conjugation_signs(rep);
        auto sd = ftv::complex_conjugation_signs(rep.contragredient());
        CHECK(s == sd);
        if (rep.label().theta_level >= 1) {
            CHECK(s.first == rep.dim() / 2);
            CHECK(s.second == rep.dim() / 2);
        }
    }
}

TEST_CASE("character orthogonality at small levels") {
    for (auto [p, n] : {std::pair<std::int64_t, int>{3, 1}, {3, 2}, {5, 1}}) {
        auto reps = ftv::enumerate_irreps(p, n, 40);
        auto res = ftv::character_orthogonality(reps, ftv::Exec::Serial);
        CHECK(res.ok);
        if (!res.ok) MESSAGE(res.detail);
    }
}

TEST_CASE("inflation is composition with the level quotient") {
    // level 1 -> 2 at p = 5, theta-type
    ArtinRep rep(5, 1, 40, RepLabel{2, 0, 1});
    ArtinRep up = ftv::inflate_rep(rep);
    CHECK(up.level() == 2);
    for (int trial = 0; trial < 25; ++trial) {
        GroupElem g = random_elem(5, 2);
        GroupElem down(5, 1, g.u % 5, g.b % 5);
        CHECK(up.character(g) == rep.character(down));
    }
    // level 2 -> 3 at p = 3 with a nonzero wild exponent
    ArtinRep rep2(3, 2, 40, RepLabel{1, 1, 0});
    ArtinRep up2 = ftv::inflate_rep(rep2);
    CHECK(up2.label().wild == 3);
    for (int trial = 0; trial < 25; ++trial) {
        GroupElem g = random_elem(3, 3);
        GroupElem down(3, 2, g.u % 9, g.b % 9);
        CHECK(up2.character(g) == rep2.character(down));
    }
}
