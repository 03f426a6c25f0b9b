#include "ftv/euler.hpp"

#include <numeric>

namespace ftv {

namespace {
bool is_prime_i64(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::int64_t ipow_checked(std::int64_t b, int e) {
    std::int64_t r = 1;
    for (int i = 0; i < e; ++i) {
        if (r > (std::int64_t(1) << 61) / (b > 0 ? b : 1))
            throw SchemaViolation("weight/level combination overflows the special-prime check");
        r *= b;
    }
    return r;
}
}  // namespace

std::int64_t FormData::coefficient(std::int64_t q) const {
    auto it = coefficients.find(q);
    if (it == coefficients.end())
        throw MissingCoefficient("a_" + std::to_string(q) + " not supplied");
    return it->second;
}

int FormData::delta(std::int64_t q) const {
    auto it = special.find(q);
    if (it == special.end())
        throw MissingCoefficient("delta_" + std::to_string(q) + " not supplied for special prime");
    return it->second;
}

void validate_form(FormData& f) {
    if (f.weight < 2 || f.weight % 2 != 0)
        throw SchemaViolation("weight must be an even integer >= 2");
    if (f.level_N < 1) throw SchemaViolation("level must be positive");
    for (std::int64_t d = 2; d * d <= f.level_N; ++d)
        if (f.level_N % (d * d) == 0) throw SchemaViolation("level must be square-free");
    for (const auto& [q, delta] : f.special) {
        if (!is_prime_i64(q) || f.level_N % q != 0)
            throw SchemaViolation("special data at a prime not dividing the level");
        if (delta != 1 && delta != -1) throw SchemaViolation("delta must be +1 or -1");
        std::int64_t expect = delta * ipow_checked(q, f.weight / 2 - 1);
        auto it = f.coefficients.find(q);
        if (it == f.coefficients.end())
            f.coefficients[q] = expect;  // derived from the special representation
        else if (it->second != expect)
            throw InconsistentSpecialData("a_" + std::to_string(q) + " = " +
                                          std::to_string(it->second) + " but delta gives " +
                                          std::to_string(expect));
    }
    // primes dividing N must carry special data
    std::int64_t rest = f.level_N;
    for (std::int64_t d = 2; rest > 1; ++d)
        if (rest % d == 0) {
            if (f.special.find(d) == f.special.end())
                throw SchemaViolation("special prime " + std::to_string(d) +
                                      " lacks a delta entry");
            while (rest % d == 0) rest /= d;
        }
}

std::pair<PadicScalar, PadicScalar> twisted_frobenius_data(const FormData& f, std::int64_t q,
                                                           std::int64_t p, int prec) {
    if (q == p) throw UnsupportedPrime("no twisted data at the working prime");
    if (f.level_N % q == 0) throw UnsupportedPrime("twisted data is for good primes only");
    std::int64_t a_q = f.coefficient(q);
    PadicScalar qs = PadicScalar::from_integer(p, prec, q);
    PadicScalar s = PadicScalar::from_integer(p, prec, a_q) * qs.pow(1 - f.weight / 2);
    return {s, qs};
}

EulerFactorValue euler_factor(const FormData& f, const ArtinRep& rep, std::int64_t q) {
    const std::int64_t p = rep.prime();
    if (q == p)
        throw UnsupportedPrime("p-Euler factors are handled by the closed results, not computed");
    const int prec = rep.prec();
    DecompData dd = decomposition_data(q, p, rep.level());

    int inv_dim = inertia_invariants_dim(rep, dd);
    EulerFactorValue out;
    if (inv_dim == 0) {
        out.value = CycElem::one(p, rep.level(), prec);
        out.degree = 0;
        return out;
    }
    if (rep.dim() != 1)
        throw Error(ErrorKind::Internal, "positive inertia invariants on a theta-type rep");

    // det(1 - Frob^{-1} T) evaluates psi at the inverse Frobenius
    CycElem psi_f = rep.psi_value(dd.frob.inverse().u);
    PadicScalar qinv = PadicScalar::from_integer(p, prec, q).invert();
    CycElem one = CycElem::one(p, rep.level(), prec);
    if (f.is_special(q)) {
        int delta = f.delta(q);
        PadicScalar c = PadicScalar::from_integer(p, prec, delta) * qinv;
        out.value = one - psi_f.scaled(c);
        out.degree = 1;
        return out;
    }
    auto [s, t] = twisted_frobenius_data(f, q, p, prec);
    CycElem psi2 = psi_f * psi_f;
    out.value = one - psi_f.scaled(s * qinv) + psi2.scaled(t * qinv * qinv);
    out.degree = 2;
    return out;
}

CycElem euler_ratio_product(const FormData& f, const ArtinRep& rep,
                            const std::vector<std::int64_t>& primes) {
    ArtinRep dual = rep.contragredient();
    CycElem acc = CycElem::one(rep.prime(), rep.level(), rep.prec());
    for (std::int64_t q : primes) {
        EulerFactorValue num = euler_factor(f, rep, q);
        EulerFactorValue den = euler_factor(f, dual, q);
        if (den.value.is_zero())
            throw DivisionByIndeterminate("Euler factor at q = " + std::to_string(q) +
                                          " vanishes for the contragredient");
        acc = acc * num.value * den.value.invert();
    }
    return acc;
}

}  // namespace ftv
