#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "ftv/cyclotomic.hpp"
#include "ftv/errors.hpp"

namespace ftv {

// Element (u, b) of the finite-level group G_n = (Z/p^n)^x |x Z/p^n with
// (u1,b1)(u2,b2) = (u1 u2, b1 + u1 b2): u is the cyclotomic coordinate
// (sigma(zeta) = zeta^u) and b the Kummer coordinate
// (sigma(a^(1/p^n)) = zeta^b a^(1/p^n)).
struct GroupElem {
    std::int64_t p = 0;
    int level = 0;  // n
    std::int64_t u = 1;
    std::int64_t b = 0;

    GroupElem() = default;
    GroupElem(std::int64_t p_, int n, std::int64_t u_, std::int64_t b_);

    std::int64_t modulus() const;  // p^n

    GroupElem inverse() const;
    std::int64_t cyclotomic_character() const { return u; }

    bool operator==(const GroupElem& o) const {
        return p == o.p && level == o.level && u == o.u && b == o.b;
    }
    bool operator<(const GroupElem& o) const {  // for ordered containers
        if (u != o.u) return u < o.u;
        return b < o.b;
    }
    std::string str() const { return "(" + std::to_string(u) + "," + std::to_string(b) + ")"; }
};

GroupElem compose(const GroupElem& g1, const GroupElem& g2);
GroupElem identity_elem(std::int64_t p, int level);

// Finite formal sum of group elements with cyclotomic coefficients.
struct GroupAlgElem {
    std::int64_t p = 0;
    int level = 0;
    std::map<GroupElem, CycElem> terms;

    GroupAlgElem() = default;
    GroupAlgElem(std::int64_t p_, int n) : p(p_), level(n) {}

    void add_term(const GroupElem& g, const CycElem& c);
    GroupAlgElem operator*(const GroupAlgElem& o) const;  // convolution
    GroupAlgElem operator+(const GroupAlgElem& o) const;
};

// Decomposition data at a prime q != p dividing the Kummer base: Frobenius
// (q mod p^n, c) and inertia generator (1, 1), with
// frob h frob^{-1} = h^q.
struct DecompData {
    std::int64_t q = 0;
    GroupElem frob;
    GroupElem inertia_gen;
    std::int64_t residue_order = 0;  // multiplicative order of q mod p^n
};

// Standard representative (c = 0).
DecompData decomposition_data(std::int64_t q, std::int64_t p, int level);
// Alternative Frobenius representative (q mod p^n, c); evaluated §-quantities
// must not depend on c, which the tests assert.
DecompData decomposition_data_with_rep(std::int64_t q, std::int64_t p, int level, std::int64_t c);

// S_q = 1 + h + ... + h^(q-1) as a group-algebra element at level n, with
// integer coefficients collected mod p^n collisions.
GroupAlgElem geometric_sum(const DecompData& dd, int prec);

std::int64_t multiplicative_order(std::int64_t q, std::int64_t modulus);

}  // namespace ftv
