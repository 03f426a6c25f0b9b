#include "ftv/group.hpp"

#include <numeric>

namespace ftv {

namespace {
std::int64_t pow_i64(std::int64_t b, int e) {
    std::int64_t r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

std::int64_t inv_mod(std::int64_t a, std::int64_t m) {
    std::int64_t t = 0, newt = 1, r = m, newr = ((a % m) + m) % m;
    while (newr != 0) {
        std::int64_t qt = r / newr;
        std::int64_t tmp = t - qt * newt;
        t = newt;
        newt = tmp;
        tmp = r - qt * newr;
        r = newr;
        newr = tmp;
    }
    if (r != 1) throw NotInvertible("unit expected mod p^n");
    return ((t % m) + m) % m;
}
}  // namespace

GroupElem::GroupElem(std::int64_t p_, int n, std::int64_t u_, std::int64_t b_) {
    p = p_;
    level = n;
    if (n < 0 || n > 62) throw Error(ErrorKind::Input, "group level out of range");
    std::int64_t m = 1;
    for (int i = 0; i < n; ++i) {
        if (m > (std::int64_t(1) << 30) / p_)
            throw Error(ErrorKind::Input, "p^n exceeds the supported group size");
        m *= p_;
    }
    u = ((u_ % m) + m) % m;
    b = ((b_ % m) + m) % m;
    if (std::gcd(u, p) != 1) throw Error(ErrorKind::Input, "cyclotomic coordinate must be a unit");
}

std::int64_t GroupElem::modulus() const { return pow_i64(p, level); }

GroupElem compose(const GroupElem& g1, const GroupElem& g2) {
    if (g1.p != g2.p || g1.level != g2.level)
        throw LevelMismatch("group elements at different levels");
    std::int64_t m = g1.modulus();
    return GroupElem(g1.p, g1.level, (g1.u * g2.u) % m, (g1.b + g1.u * g2.b) % m);
}

GroupElem GroupElem::inverse() const {
    std::int64_t m = modulus();
    std::int64_t ui = inv_mod(u, m);
    return GroupElem(p, level, ui, (m - (ui * (b % m)) % m) % m);
}

GroupElem identity_elem(std::int64_t p, int level) { return GroupElem(p, level, 1, 0); }

void GroupAlgElem::add_term(const GroupElem& g, const CycElem& c) {
    if (g.p != p || g.level != level) throw LevelMismatch("algebra term at wrong level");
    auto it = terms.find(g);
    if (it == terms.end())
        terms.emplace(g, c);
    else
        it->second = it->second + c;
}

GroupAlgElem GroupAlgElem::operator+(const GroupAlgElem& o) const {
    if (p != o.p || level != o.level) throw LevelMismatch("algebra elements at different levels");
    GroupAlgElem out = *this;
    for (const auto& [g, c] : o.terms) out.add_term(g, c);
    return out;
}

GroupAlgElem GroupAlgElem::operator*(const GroupAlgElem& o) const {
    if (p != o.p || level != o.level) throw LevelMismatch("algebra elements at different levels");
    GroupAlgElem out(p, level);
    for (const auto& [g1, c1] : terms)
        for (const auto& [g2, c2] : o.terms) out.add_term(compose(g1, g2), c1 * c2);
    return out;
}

std::int64_t multiplicative_order(std::int64_t q, std::int64_t modulus) {
    std::int64_t x = ((q % modulus) + modulus) % modulus;
    std::int64_t ord = 1;
    std::int64_t cur = x;
    while (cur != 1) {
        cur = (cur * x) % modulus;
        ++ord;
        if (ord > modulus) throw Error(ErrorKind::Internal, "order computation diverged");
    }
    return ord;
}

DecompData decomposition_data_with_rep(std::int64_t q, std::int64_t p, int level, std::int64_t c) {
    if (q == p) throw QEqualsP("decomposition data at q = p is out of scope");
    DecompData dd;
    dd.q = q;
    dd.frob = GroupElem(p, level, q, c);
    dd.inertia_gen = GroupElem(p, level, 1, 1);
    dd.residue_order = multiplicative_order(q, pow_i64(p, level));
    return dd;
}

DecompData decomposition_data(std::int64_t q, std::int64_t p, int level) {
    return decomposition_data_with_rep(q, p, level, 0);
}

GroupAlgElem geometric_sum(const DecompData& dd, int prec) {
    std::int64_t p = dd.frob.p;
    int n = dd.frob.level;
    GroupAlgElem s(p, n);
    CycElem one = CycElem::one(p, 0, prec);
    for (std::int64_t i = 0; i < dd.q; ++i) s.add_term(GroupElem(p, n, 1, i), one);
    return s;
}

}  // namespace ftv
