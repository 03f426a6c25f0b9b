#include "ftv/reps.hpp"

#include <algorithm>
#include <numeric>

#ifdef FTV_HAVE_OPENMP
#include <omp.h>
#endif

namespace ftv {

namespace {
// saturates well below overflow; callers bound-check against desk scale
std::int64_t pow_i64(std::int64_t b, int e) {
    std::int64_t r = 1;
    for (int i = 0; i < e; ++i) {
        if (r > (std::int64_t(1) << 40)) return std::int64_t(1) << 62;
        r *= b;
    }
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
    if (r != 1) throw NotInvertible("unit expected");
    return ((t % m) + m) % m;
}
}  // namespace

int hardware_threads() {
#ifdef FTV_HAVE_OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

ArtinRep::ArtinRep(std::int64_t p, int level, int prec, RepLabel label)
    : p_(p), n_(level), prec_(prec), label_(label) {
    if (level < 1) throw Error(ErrorKind::Input, "group level must be >= 1");
    if (label.theta_level < 0 || label.theta_level > level)
        throw Error(ErrorKind::Input, "theta level out of range");
    pn_ = pow_i64(p, n_);
    if (pn_ > 1000000)
        throw Error(ErrorKind::Input,
                    "p^n too large for the finite-level tables (desk scale is p^n <= 10^6)");
    pm_ = pow_i64(p, label_.theta_level);
    dim_ = label_.theta_level == 0 ? 1 : static_cast<int>(CycElem::phi(p, label_.theta_level));

    // tame/wild exponents reduced to canonical ranges
    std::int64_t pn1 = pow_i64(p, n_ - 1);
    label_.tame = static_cast<int>(((label.tame % (p - 1)) + (p - 1)) % (p - 1));
    label_.wild = static_cast<int>(((label.wild % pn1) + pn1) % pn1);

    // unit tables mod p^n
    units_n_.reserve(static_cast<std::size_t>(CycElem::phi(p, n_)));
    unit_index_n_.assign(static_cast<std::size_t>(pn_), -1);
    for (std::int64_t u = 1; u < pn_; ++u)
        if (u % p != 0) {
            unit_index_n_[static_cast<std::size_t>(u)] = static_cast<int>(units_n_.size());
            units_n_.push_back(u);
        }

    if (label_.theta_level >= 1) {
        unit_index_m_.assign(static_cast<std::size_t>(pm_), -1);
        for (std::int64_t u = 1; u < pm_; ++u)
            if (u % p != 0) {
                unit_index_m_[static_cast<std::size_t>(u)] = static_cast<int>(units_m_.size());
                units_m_.push_back(u);
            }
    }

    // dlog table base 1+p on 1 + pZ/p^n
    std::vector<std::int64_t> dlog(static_cast<std::size_t>(pn_), -1);
    {
        std::int64_t g = (1 + p) % pn_;
        std::int64_t cur = 1;
        for (std::int64_t e = 0; e < pn1; ++e) {
            dlog[static_cast<std::size_t>(cur)] = e;
            cur = (cur * g) % pn_;
        }
    }

    // psi values: psi(u) = teich(u)^i * zeta_{p^(n-1)}^(j*e(u))
    psi_by_unit_.reserve(units_n_.size());
    for (std::int64_t u : units_n_) {
        PadicScalar om = PadicScalar::teichmuller(p_, std::max(prec_, n_ + 1), u);
        std::int64_t om_int = om.residue_mod_pk(n_);
        std::int64_t w = (u * inv_mod(om_int, pn_)) % pn_;
        std::int64_t e = dlog[static_cast<std::size_t>(w)];
        if (e < 0) throw Error(ErrorKind::Internal, "unit not in 1+pZ after teichmuller split");
        PadicScalar tame = PadicScalar::teichmuller(p_, prec_, u).pow(label_.tame);
        // zeta_{p^(n-1)}^(j e) = zeta_{p^n}^(p j e)
        CycElem wild = CycElem::zeta_pow(p_, n_, prec_, p_ * label_.wild % pn_ * e);
        psi_by_unit_.push_back(wild.scaled(tame));
    }
}

std::string ArtinRep::name() const {
    std::string psi = "psi(" + std::to_string(label_.tame) + "," + std::to_string(label_.wild) + ")";
    if (label_.theta_level == 0) return psi;
    return "theta(" + std::to_string(label_.theta_level) + ")*" + psi;
}

CycElem ArtinRep::psi_value(std::int64_t u) const {
    u = ((u % pn_) + pn_) % pn_;
    int idx = unit_index_n_[static_cast<std::size_t>(u)];
    if (idx < 0) throw Error(ErrorKind::Input, "psi evaluated at a non-unit");
    return psi_by_unit_[static_cast<std::size_t>(idx)];
}

CycElem ArtinRep::zeta_m_pow(std::int64_t k) const {
    // zeta_{p^m}^k = zeta_{p^n}^(k * p^(n-m))
    std::int64_t stride = pow_i64(p_, n_ - label_.theta_level);
    return CycElem::zeta_pow(p_, n_, prec_, ((k % pm_) + pm_) % pm_ * stride);
}

Matrix<CycElem> ArtinRep::matrix_of(const GroupElem& g) const {
    if (g.p != p_ || g.level != n_) throw LevelMismatch("group element at wrong level");
    CycElem psi = psi_value(g.u);
    if (label_.theta_level == 0) {
        Matrix<CycElem> m(1, 1, psi);
        return m;
    }
    Matrix<CycElem> m(dim_, dim_, CycElem::zero(p_, n_, prec_));
    std::int64_t v = g.u % pm_;
    std::int64_t c = g.b % pm_;
    for (int col = 0; col < dim_; ++col) {
        std::int64_t u = units_m_[static_cast<std::size_t>(col)];
        std::int64_t vu = (v * u) % pm_;
        int row = unit_index_m_[static_cast<std::size_t>(vu)];
        std::int64_t w = (inv_mod(vu, pm_) * c) % pm_;
        m.at(row, col) = psi * zeta_m_pow(w);
    }
    return m;
}

CycElem ArtinRep::character(const GroupElem& g) const {
    if (g.p != p_ || g.level != n_) throw LevelMismatch("group element at wrong level");
    if (label_.theta_level == 0) return psi_value(g.u);
    if ((g.u - 1) % pm_ != 0) return CycElem::zero(p_, n_, prec_);
    CycElem acc = CycElem::zero(p_, n_, prec_);
    for (std::int64_t u : units_m_) acc = acc + zeta_m_pow(u * (g.b % pm_));
    return acc * psi_value(g.u);
}

ArtinRep ArtinRep::contragredient() const {
    RepLabel dual;
    dual.tame = -label_.tame;
    dual.wild = -label_.wild;
    dual.theta_level = label_.theta_level;
    return ArtinRep(p_, n_, prec_, dual);
}

Matrix<CycElem> ArtinRep::apply(const GroupAlgElem& x) const {
    if (x.p != p_ || x.level != n_) throw LevelMismatch("algebra element at wrong level");
    Matrix<CycElem> acc(dim_, dim_, CycElem::zero(p_, n_, prec_));
    for (const auto& [g, coeff] : x.terms) {
        Matrix<CycElem> mg = matrix_of(g);
        for (int r = 0; r < dim_; ++r)
            for (int c = 0; c < dim_; ++c) {
                if (mg.at(r, c).is_zero()) continue;
                acc.at(r, c) = acc.at(r, c) + mg.at(r, c) * coeff;
            }
    }
    return acc;
}

std::vector<GroupElem> all_group_elements(std::int64_t p, int level) {
    std::int64_t pn = pow_i64(p, level);
    if (pn > 4096)
        throw Error(ErrorKind::Input, "group enumeration is limited to |G_n| around 10^7");
    std::vector<GroupElem> out;
    out.reserve(static_cast<std::size_t>(pn * CycElem::phi(p, level)));
    for (std::int64_t u = 1; u < pn; ++u) {
        if (u % p == 0) continue;
        for (std::int64_t b = 0; b < pn; ++b) out.emplace_back(p, level, u, b);
    }
    return out;
}

std::vector<ArtinRep> enumerate_irreps(std::int64_t p, int level, int prec) {
    std::vector<ArtinRep> out;
    std::int64_t pn1 = pow_i64(p, level - 1);
    for (int i = 0; i < p - 1; ++i)
        for (std::int64_t j = 0; j < pn1; ++j)
            out.emplace_back(p, level, prec, RepLabel{i, static_cast<int>(j), 0});

    // theta-type candidates, deduplicated by exact character equality on the
    // block where theta-characters can be nonzero (u = 1 mod p^m)
    for (int m = 1; m <= level; ++m) {
        std::int64_t pm = pow_i64(p, m);
        std::vector<GroupElem> support;
        for (const GroupElem& g : all_group_elements(p, level))
            if ((g.u - 1) % pm == 0) support.push_back(g);

        std::vector<ArtinRep> kept;
        std::vector<std::vector<CycElem>> kept_chars;
        for (int i = 0; i < p - 1; ++i) {
            for (std::int64_t j = 0; j < pn1; ++j) {
                ArtinRep cand(p, level, prec, RepLabel{i, static_cast<int>(j), m});
                std::vector<CycElem> chars;
                chars.reserve(support.size());
                for (const GroupElem& g : support) chars.push_back(cand.character(g));
                bool dup = false;
                for (std::size_t k = 0; k < kept.size() && !dup; ++k) {
                    bool same = true;
                    for (std::size_t t = 0; t < support.size() && same; ++t)
                        if (chars[t] != kept_chars[k][t]) same = false;
                    dup = same;
                }
                if (!dup) {
                    kept.push_back(std::move(cand));
                    kept_chars.push_back(std::move(chars));
                }
            }
        }
        for (auto& r : kept) out.push_back(std::move(r));
    }

    std::int64_t order = pow_i64(p, level) * CycElem::phi(p, level);
    std::int64_t sum = 0;
    for (const auto& r : out) sum += static_cast<std::int64_t>(r.dim()) * r.dim();
    if (sum != order)
        throw CompletenessFailure("sum of dim^2 is " + std::to_string(sum) + ", expected |G_n| = " +
                                  std::to_string(order));
    return out;
}

int inertia_invariants_dim(const ArtinRep& rep, const DecompData& dd) {
    Matrix<CycElem> m = rep.matrix_of(dd.inertia_gen);
    CycElem one = CycElem::one(rep.prime(), rep.level(), rep.prec());
    for (int i = 0; i < m.rows; ++i) m.at(i, i) = m.at(i, i) - one;
    return m.cols - rank(std::move(m));
}

std::pair<int, int> complex_conjugation_signs(const ArtinRep& rep) {
    GroupElem conj(rep.prime(), rep.level(), -1, 0);
    CycElem tr = rep.character(conj);
    for (int t = -rep.dim(); t <= rep.dim(); ++t) {
        if ((rep.dim() + t) % 2 != 0) continue;
        if (tr == CycElem::from_integer(rep.prime(), rep.level(), rep.prec(), t))
            return {(rep.dim() + t) / 2, (rep.dim() - t) / 2};
    }
    throw Error(ErrorKind::Internal, "conjugation trace is not a small integer");
}

OrthogonalityResult character_orthogonality(const std::vector<ArtinRep>& reps, Exec exec) {
    if (reps.empty()) return {true, ""};
    std::int64_t p = reps[0].prime();
    int n = reps[0].level();
    int prec = reps[0].prec();
    std::vector<GroupElem> elems = all_group_elements(p, n);
    std::int64_t order = static_cast<std::int64_t>(elems.size());

    // character tables at g and g^{-1}
    std::vector<std::vector<CycElem>> chi(reps.size()), chi_inv(reps.size());
    for (std::size_t r = 0; r < reps.size(); ++r) {
        chi[r].reserve(elems.size());
        chi_inv[r].reserve(elems.size());
        for (const GroupElem& g : elems) {
            chi[r].push_back(reps[r].character(g));
            chi_inv[r].push_back(reps[r].character(g.inverse()));
        }
    }

    std::vector<std::pair<int, int>> pairs;
    for (std::size_t a = 0; a < reps.size(); ++a)
        for (std::size_t b = a; b < reps.size(); ++b)
            pairs.emplace_back(static_cast<int>(a), static_cast<int>(b));

    std::vector<std::string> failures(pairs.size());
    bool parallel = exec == Exec::Parallel;
    (void)parallel;
#ifdef FTV_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic) if (parallel)
#endif
    for (std::size_t idx = 0; idx < pairs.size(); ++idx) {
        auto [a, b] = pairs[idx];
        CycElem acc = CycElem::zero(p, n, prec);
        for (std::size_t t = 0; t < elems.size(); ++t) {
            const CycElem& x = chi[static_cast<std::size_t>(a)][t];
            const CycElem& y = chi_inv[static_cast<std::size_t>(b)][t];
            if (x.is_zero() || y.is_zero()) continue;  // theta-characters vanish off u = 1 mod p^m
            acc = acc + x * y;
        }
        std::int64_t expect = a == b ? order : 0;
        if (acc != CycElem::from_integer(p, n, prec, expect))
            failures[idx] = reps[static_cast<std::size_t>(a)].name() + " x " +
                            reps[static_cast<std::size_t>(b)].name() + " -> " + acc.str();
    }
    for (const auto& f : failures)
        if (!f.empty()) return {false, f};
    return {true, ""};
}

ArtinRep inflate_rep(const ArtinRep& rep) {
    // The level-(n+1) inflation: psi's wild part evaluates through
    // zeta_{p^(n-1)} = zeta_{p^n}^p, so the wild exponent scales by p; the
    // theta level is unchanged.
    RepLabel up = rep.label();
    up.wild = static_cast<int>(rep.label().wild * rep.prime());
    return ArtinRep(rep.prime(), rep.level() + 1, rep.prec(), up);
}

}  // namespace ftv
