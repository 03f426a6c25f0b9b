#include "ftv/classify.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace ftv {

namespace {
std::int64_t pow_i64(std::int64_t b, int e) {
    std::int64_t r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

bool is_perfect_pth_power(std::int64_t a, std::int64_t p) {
    if (a <= 1) return a == 1;
    std::int64_t root = static_cast<std::int64_t>(std::llround(std::pow(double(a), 1.0 / double(p))));
    for (std::int64_t r = std::max<std::int64_t>(1, root - 2); r <= root + 2; ++r) {
        std::int64_t acc = 1;
        bool over = false;
        for (std::int64_t i = 0; i < p && !over; ++i) {
            if (acc > a / (r > 0 ? r : 1) + 1) over = true;
            acc *= r;
        }
        if (!over && acc == a) return true;
    }
    return false;
}
}  // namespace

std::vector<std::int64_t> prime_factors(std::int64_t n) {
    std::vector<std::int64_t> out;
    for (std::int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    if (n > 1) out.push_back(n);
    return out;
}

Matrix<PadicScalar> twisted_module_matrix(const FormData& f, std::int64_t q, std::int64_t p,
                                          int prec, TwistConvention twist) {
    auto [s, t] = twisted_frobenius_data(f, q, p, prec);
    PadicScalar qinv = PadicScalar::from_integer(p, prec, q).invert();
    PadicScalar trace, det;
    if (twist == TwistConvention::PaperDisplay) {
        trace = s * qinv;  // a_q q^{-k/2}
        det = qinv;
    } else {
        trace = s;  // a_q q^{1-k/2}
        det = PadicScalar::from_integer(p, prec, q);
    }
    // companion matrix of Y^2 - trace Y + det
    Matrix<PadicScalar> x(2, 2, PadicScalar::zero(p, prec));
    x.at(0, 1) = -det;
    x.at(1, 0) = PadicScalar::one(p, prec);
    x.at(1, 1) = trace;
    return x;
}

namespace {

// v_p(det(X^(f_q p^J) - 1)) for J = 0, 1, ... until two consecutive values
// agree; membership iff the stabilized valuation is positive (infinite when
// the determinant vanishes exactly: an honest fixed point).
struct FixedPointTest {
    bool member = false;
    std::string reason;
};

FixedPointTest frobenius_fixed_point_test(const Matrix<PadicScalar>& x, std::int64_t f_q,
                                          std::int64_t p, int prec) {
    Matrix<PadicScalar> ident(2, 2, PadicScalar::zero(p, prec));
    ident.at(0, 0) = PadicScalar::one(p, prec);
    ident.at(1, 1) = PadicScalar::one(p, prec);

    Matrix<PadicScalar> pw = mat_pow(x, static_cast<std::uint64_t>(f_q), ident);
    auto val_at = [&](const Matrix<PadicScalar>& m) -> Rat {
        Matrix<PadicScalar> d = m;
        d.at(0, 0) = d.at(0, 0) - PadicScalar::one(p, prec);
        d.at(1, 1) = d.at(1, 1) - PadicScalar::one(p, prec);
        PadicScalar det = determinant(std::move(d));
        return det.valuation();
    };

    Rat prev = val_at(pw);
    const int j_cap = 8;
    for (int j = 1; j <= j_cap; ++j) {
        pw = mat_pow(pw, static_cast<std::uint64_t>(p), ident);
        Rat cur = val_at(pw);
        if (cur == prev || (prev.is_infinity() && cur.is_infinity())) {
            bool member = prev.is_infinity() || Rat(0) < prev;
            return {member, "v_p(det(X^(f q_ord * p^J) - 1)) stabilizes at " + prev.str()};
        }
        if (!(prev == Rat(0)) && !(cur == Rat(0))) {
            // strictly growing valuation: a fixed point accumulating depth
            return {true, "v_p(det(X^(f_q p^J) - 1)) grows (" + prev.str() + " -> " + cur.str() +
                              "), fixed point on the divisible module"};
        }
        prev = cur;
    }
    throw PrecisionExhausted("Frobenius fixed-point test did not stabilize within the budget");
}

}  // namespace

PrimeClassification classify_primes(const FormData& f, std::int64_t a, std::int64_t p, int level,
                                    int prec, TwistConvention twist) {
    if (a < 1) throw BadKummerBase("Kummer base must be a positive integer");
    if (a % p == 0) throw BadKummerBase("p divides the Kummer base");
    if (a > 1 && is_perfect_pth_power(a, p))
        throw BadKummerBase("Kummer base is a perfect p-th power");

    PrimeClassification cls;
    cls.a = a;
    cls.P0 = prime_factors(a);

    for (std::int64_t q : cls.P0) {
        if (f.is_special(q)) {
            int delta = f.delta(q);
            std::int64_t f_ord = multiplicative_order(q, p);
            bool trivial_on_mu_p = delta == 1 || f_ord % 2 == 0;
            if (trivial_on_mu_p) {
                cls.P1.push_back(q);
                cls.evidence.push_back(
                    {q, "P1",
                     "special prime, delta = " + std::to_string(delta) + ", ord_p(q) = " +
                         std::to_string(f_ord) + ", delta^ord = 1"});
            } else {
                cls.evidence.push_back(
                    {q, "P0",
                     "special prime, delta = -1 with odd ord_p(q) = " + std::to_string(f_ord)});
            }
        } else {
            Matrix<PadicScalar> x = twisted_module_matrix(f, q, p, prec, twist);
            std::int64_t f_q = multiplicative_order(q, pow_i64(p, level));
            FixedPointTest t = frobenius_fixed_point_test(x, f_q, p, prec);
            if (t.member) {
                cls.P2.push_back(q);
                cls.evidence.push_back({q, "P2", "good prime, " + t.reason});
            } else {
                cls.evidence.push_back({q, "P0", "good prime, " + t.reason});
            }
        }
    }
    return cls;
}

PrimeClassification apply_override(PrimeClassification computed, const ClassificationOverride& ov) {
    auto sorted = [](std::vector<std::int64_t> v) {
        std::sort(v.begin(), v.end());
        return v;
    };
    std::vector<std::int64_t> p1 = sorted(ov.P1), p2 = sorted(ov.P2);
    for (std::int64_t q : p1)
        if (std::find(computed.P0.begin(), computed.P0.end(), q) == computed.P0.end())
            throw SchemaViolation("override places " + std::to_string(q) + " in P1 but it is not in P0");
    for (std::int64_t q : p2)
        if (std::find(computed.P0.begin(), computed.P0.end(), q) == computed.P0.end())
            throw SchemaViolation("override places " + std::to_string(q) + " in P2 but it is not in P0");
    for (std::int64_t q : p1)
        if (std::find(p2.begin(), p2.end(), q) != p2.end())
            throw SchemaViolation("override places " + std::to_string(q) + " in both P1 and P2");

    if (p1 != computed.P1 || p2 != computed.P2)
        computed.warnings.push_back("classification override disagrees with the computed classes");
    computed.P1 = p1;
    computed.P2 = p2;
    computed.overridden = true;
    return computed;
}

ErrorTermClass assemble_error_term(const PrimeClassification& cls, const FormData& f,
                                   std::int64_t p, int level, int prec, TwistConvention twist) {
    ErrorTermClass out;
    std::vector<std::pair<std::int64_t, PrimeClass>> items;
    for (std::int64_t q : cls.P1) items.emplace_back(q, PrimeClass::P1);
    for (std::int64_t q : cls.P2) items.emplace_back(q, PrimeClass::P2);
    std::sort(items.begin(), items.end());

    for (auto [q, tag] : items) {
        ErrorSummand s;
        s.tag = tag;
        s.dd = decomposition_data(q, p, level);
        if (tag == PrimeClass::P1) {
            PadicScalar delta = PadicScalar::from_integer(p, prec, f.delta(q));
            PadicScalar qinv = PadicScalar::from_integer(p, prec, q).invert();
            s.split_eigenvalues = {delta, delta * qinv};
            Matrix<PadicScalar> x(2, 2, PadicScalar::zero(p, prec));
            x.at(0, 0) = s.split_eigenvalues[0];
            x.at(1, 1) = s.split_eigenvalues[1];
            s.frob_matrix = std::move(x);
        } else {
            s.frob_matrix = twisted_module_matrix(f, q, p, prec, twist);
        }
        out.summands.push_back(std::move(s));
    }
    return out;
}

std::int64_t count_points_weight2(const std::array<std::int64_t, 5>& w, std::int64_t q) {
    const std::int64_t a1 = w[0], a2 = w[1], a3 = w[2], a4 = w[3], a6 = w[4];
    const std::int64_t b2 = a1 * a1 + 4 * a2;
    const std::int64_t b4 = 2 * a4 + a1 * a3;
    const std::int64_t b6 = a3 * a3 + 4 * a6;
    const std::int64_t b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
    const std::int64_t disc = -b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6;
    if (disc % q == 0) throw BadReduction("q divides the discriminant");
    if (q > 4096) throw Error(ErrorKind::Input, "point counting is brute force; q too large");

    auto md = [&](std::int64_t v) { return ((v % q) + q) % q; };
    std::int64_t affine = 0;
    for (std::int64_t x = 0; x < q; ++x) {
        std::int64_t rhs = md(x * x % q * x + a2 * x % q * x + a4 * x + a6);
        for (std::int64_t y = 0; y < q; ++y)
            if (md(y * y + a1 * x % q * y + a3 * y) == rhs) ++affine;
    }
    return q - affine;  // q + 1 - (affine + 1)
}

}  // namespace ftv
