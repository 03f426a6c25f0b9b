#include "ftv/charelem.hpp"

#include <algorithm>
#include <map>

namespace ftv {

namespace {

Matrix<PadicScalar> scalar_identity(std::int64_t p, int prec, int r) {
    Matrix<PadicScalar> m(r, r, PadicScalar::zero(p, prec));
    for (int i = 0; i < r; ++i) m.at(i, i) = PadicScalar::one(p, prec);
    return m;
}

Matrix<PadicScalar> negated(Matrix<PadicScalar> m) {
    for (auto& x : m.a) x = -x;
    return m;
}

Matrix<CycElem> lift_scalar_matrix(const Matrix<PadicScalar>& m, int level) {
    Matrix<CycElem> out(m.rows, m.cols, CycElem::zero(m.a[0].prime(), 0, 1));
    for (std::size_t i = 0; i < m.a.size(); ++i) out.a[i] = CycElem::from_scalar(m.a[i]);
    (void)level;
    return out;
}

}  // namespace

MatrixGroupAlg annihilator(const LocalModuleSpec& spec, int prec) {
    std::int64_t p = spec.dd.frob.p;
    int n = spec.dd.frob.level;
    int r = spec.frob_matrix.rows;
    if (determinant(spec.frob_matrix).is_zero())
        throw Error(ErrorKind::Input,
                    "Frobenius matrix must be invertible on the coefficient module");
    MatrixGroupAlg out;
    out.p = p;
    out.level = n;
    out.r = r;

    std::map<GroupElem, Matrix<PadicScalar>> acc;
    acc.emplace(spec.dd.frob, scalar_identity(p, prec, r));
    auto subtract_at = [&](const GroupElem& g, const Matrix<PadicScalar>& x) {
        auto it = acc.find(g);
        if (it == acc.end()) {
            acc.emplace(g, negated(x));
        } else {
            for (std::size_t i = 0; i < x.a.size(); ++i) it->second.a[i] = it->second.a[i] - x.a[i];
        }
    };
    if (spec.kind == ModuleKind::N) {
        subtract_at(identity_elem(p, n), spec.frob_matrix);
    } else {
        for (std::int64_t i = 0; i < spec.dd.q; ++i)
            subtract_at(GroupElem(p, n, 1, i), spec.frob_matrix);
    }
    for (auto& [g, m] : acc) out.terms.emplace_back(g, std::move(m));
    return out;
}

EvalResult evaluate(const LocalModuleSpec& spec, const ArtinRep& rep) {
    if (rep.prime() != spec.dd.frob.p || rep.level() != spec.dd.frob.level)
        throw LevelMismatch("representation and module spec at different levels");
    const int prec = rep.prec();
    MatrixGroupAlg ann = annihilator(spec, prec);
    const int dim = rep.dim() * ann.r;

    Matrix<CycElem> total(dim, dim, CycElem::zero(rep.prime(), rep.level(), prec));
    for (const auto& [g, coeff] : ann.terms) {
        Matrix<CycElem> big = kronecker(rep.matrix_of(g), lift_scalar_matrix(coeff, rep.level()));
        for (std::size_t i = 0; i < big.a.size(); ++i) {
            if (big.a[i].is_zero()) continue;
            total.a[i] = total.a[i] + big.a[i];
        }
    }
    CycElem det = determinant(std::move(total));
    if (det.is_zero()) return EvalResult::indeterminate_result();
    return EvalResult::of(std::move(det));
}

std::vector<CycElem> theta_cycle_factors(const LocalModuleSpec& spec, const ArtinRep& rep) {
    if (rep.label().theta_level == 0)
        throw Error(ErrorKind::Internal, "cycle factorization applies to theta-type reps");
    const DecompData& dd = spec.dd;
    const Matrix<PadicScalar>& x = spec.frob_matrix;
    const ModuleKind kind = spec.kind;
    const std::int64_t p = rep.prime();
    const int n = rep.level();
    const int prec = rep.prec();
    const int m = rep.label().theta_level;
    std::int64_t pm = 1;
    for (int i = 0; i < m; ++i) pm *= p;
    std::int64_t stride = 1;
    for (int i = 0; i < n - m; ++i) stride *= p;

    auto inv_mod_pm = [&](std::int64_t v) {
        std::int64_t t = 0, newt = 1, r0 = pm, newr = ((v % pm) + pm) % pm;
        while (newr != 0) {
            std::int64_t qt = r0 / newr;
            std::int64_t tmp = t - qt * newt;
            t = newt;
            newt = tmp;
            tmp = r0 - qt * newr;
            r0 = newr;
            newr = tmp;
        }
        return ((t % pm) + pm) % pm;
    };

    const std::int64_t qbar = dd.frob.u % pm;
    const std::int64_t cbar = dd.frob.b % pm;
    const CycElem psi_q = rep.psi_value(dd.frob.u);
    const int r = x.rows;

    Matrix<PadicScalar> ident(r, r, PadicScalar::zero(p, prec));
    for (int i = 0; i < r; ++i) ident.at(i, i) = PadicScalar::one(p, prec);

    std::vector<CycElem> factors;
    std::vector<bool> seen(static_cast<std::size_t>(pm), false);
    for (std::int64_t u0 = 1; u0 < pm; ++u0) {
        if (u0 % p == 0 || seen[static_cast<std::size_t>(u0)]) continue;
        // collect the Frobenius orbit of u0
        std::vector<std::int64_t> orbit;
        std::int64_t u = u0;
        do {
            seen[static_cast<std::size_t>(u)] = true;
            orbit.push_back(u);
            u = (u * qbar) % pm;
        } while (u != u0);
        const int len = static_cast<int>(orbit.size());

        // product of the Frobenius twists zeta^((q u)^{-1} c) over the cycle
        std::int64_t twist_expo = 0;
        for (std::int64_t v : orbit) twist_expo = (twist_expo + inv_mod_pm(qbar * v) * cbar) % pm;
        CycElem alpha = psi_q.pow(len) * CycElem::zeta_pow(p, n, prec, twist_expo * stride);

        CycElem sigma = CycElem::one(p, n, prec);
        if (kind == ModuleKind::M) {
            for (std::int64_t v : orbit) {
                CycElem s_u = CycElem::zero(p, n, prec);
                std::int64_t vinv = inv_mod_pm(v);
                for (std::int64_t i = 0; i < dd.q; ++i)
                    s_u = s_u + CycElem::zeta_pow(p, n, prec, (vinv * i) % pm * stride);
                sigma = sigma * s_u;
            }
        }

        Matrix<PadicScalar> xl = mat_pow(x, static_cast<std::uint64_t>(len), ident);
        Matrix<CycElem> block(r, r, CycElem::zero(p, n, prec));
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j) {
                block.at(i, j) = sigma * CycElem::from_scalar(xl.at(i, j));
                if (i == j) block.at(i, j) = block.at(i, j) - alpha;
            }
        CycElem factor = determinant(std::move(block));
        if ((static_cast<std::int64_t>(r) * len) % 2 != 0) factor = -factor;
        factors.push_back(std::move(factor));
    }
    return factors;
}

namespace {

EvalResult eval_one_dim_split(const ErrorSummand& summand, const ArtinRep& rep) {
    const std::int64_t p = rep.prime();
    const int prec = rep.prec();
    CycElem psi_f = rep.psi_value(summand.dd.frob.u);
    PadicScalar q_scalar = PadicScalar::from_integer(p, prec, summand.dd.q);

    std::vector<PadicScalar> num_roots = summand.split_eigenvalues;
    std::vector<PadicScalar> den_roots;
    den_roots.reserve(num_roots.size());
    for (const auto& x : num_roots) den_roots.push_back(q_scalar * x);

    // cancel factors (psi(F) - c) shared between numerator and denominator
    EvalResult result;
    std::vector<bool> den_used(den_roots.size(), false);
    std::vector<PadicScalar> num_kept;
    for (const auto& c : num_roots) {
        bool cancelled = false;
        for (std::size_t j = 0; j < den_roots.size(); ++j) {
            if (den_used[j]) continue;
            if (c == den_roots[j]) {
                den_used[j] = true;
                cancelled = true;
                result.cancelled_factors.push_back("(psi(Frob) - " + c.str() + ")");
                break;
            }
        }
        if (!cancelled) num_kept.push_back(c);
    }

    CycElem num = CycElem::one(p, rep.level(), prec);
    for (const auto& c : num_kept) num = num * (psi_f - CycElem::from_scalar(c));
    CycElem den = CycElem::one(p, rep.level(), prec);
    for (std::size_t j = 0; j < den_roots.size(); ++j)
        if (!den_used[j]) den = den * (psi_f - CycElem::from_scalar(den_roots[j]));

    if (den.is_zero()) {
        result.indeterminate = true;
        result.valuation = Rat::infinity();
        return result;
    }
    CycElem value = num * den.invert();
    result.valuation = value.valuation();
    result.value = std::move(value);
    return result;
}

}  // namespace

EvalResult local_error_eval(const ErrorSummand& summand, const ArtinRep& rep) {
    if (rep.dim() == 1 && !summand.split_eigenvalues.empty())
        return eval_one_dim_split(summand, rep);

    if (rep.dim() == 1) {
        // rank-r determinant route, no factoring available
        EvalResult num = evaluate({summand.dd, summand.frob_matrix, ModuleKind::N}, rep);
        EvalResult den = evaluate({summand.dd, summand.frob_matrix, ModuleKind::M}, rep);
        if (num.indeterminate || den.indeterminate) return EvalResult::indeterminate_result();
        EvalResult out;
        out.value = num.value * den.value.invert();
        out.valuation = num.valuation - den.valuation;
        return out;
    }

    // theta-type: both determinants factor over the Frobenius cycles of the
    // induced basis; cancel exactly-equal factors between numerator and
    // denominator (the cycle products make them equal pairwise, also at the
    // configurations where the raw determinants vanish together).
    std::vector<CycElem> num_factors =
        theta_cycle_factors({summand.dd, summand.frob_matrix, ModuleKind::N}, rep);
    std::vector<CycElem> den_factors =
        theta_cycle_factors({summand.dd, summand.frob_matrix, ModuleKind::M}, rep);

    EvalResult out;
    std::vector<bool> den_used(den_factors.size(), false);
    std::vector<const CycElem*> num_kept;
    for (const CycElem& f : num_factors) {
        bool cancelled = false;
        for (std::size_t j = 0; j < den_factors.size(); ++j) {
            if (den_used[j]) continue;
            if (f == den_factors[j]) {
                den_used[j] = true;
                cancelled = true;
                break;
            }
        }
        if (!cancelled) num_kept.push_back(&f);
    }
    if (num_kept.size() != num_factors.size())
        out.cancelled_factors.push_back(
            std::to_string(num_factors.size() - num_kept.size()) +
            " matching cycle factor(s)");

    CycElem num = CycElem::one(rep.prime(), rep.level(), rep.prec());
    for (const CycElem* f : num_kept) num = num * *f;
    CycElem den = CycElem::one(rep.prime(), rep.level(), rep.prec());
    for (std::size_t j = 0; j < den_factors.size(); ++j)
        if (!den_used[j]) den = den * den_factors[j];

    if (den.is_zero()) {
        out.indeterminate = true;
        out.valuation = Rat::infinity();
        return out;
    }
    out.value = num * den.invert();
    out.valuation = out.value.valuation();
    return out;
}

}  // namespace ftv
