#include "ftv/cyclotomic.hpp"

#include <algorithm>

#include "ftv/linalg.hpp"

namespace ftv {

namespace {
std::int64_t pow_i64(std::int64_t b, int e) {
    std::int64_t r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}
}  // namespace

std::int64_t CycElem::phi(std::int64_t p, int m) {
    if (m == 0) return 1;
    return (p - 1) * pow_i64(p, m - 1);
}

CycElem CycElem::zero(std::int64_t p, int m, int prec) {
    CycElem e;
    e.p_ = p;
    e.level_ = m;
    prec = std::min(prec, PadicScalar::max_digits(p));
    e.c_.assign(static_cast<std::size_t>(phi(p, m)), PadicScalar::zero(p, prec));
    return e;
}

CycElem CycElem::one(std::int64_t p, int m, int prec) { return from_integer(p, m, prec, 1); }

CycElem CycElem::from_integer(std::int64_t p, int m, int prec, std::int64_t v) {
    CycElem e = zero(p, m, prec);
    e.c_[0] = PadicScalar::from_integer(p, prec, v);
    return e;
}

CycElem CycElem::from_scalar(const PadicScalar& s, int m) {
    CycElem e = zero(s.prime(), m, std::max(1, s.abs_precision()));
    e.c_[0] = s;
    return e;
}

CycElem CycElem::zeta_pow(std::int64_t p, int m, int prec, std::int64_t k) {
    std::int64_t pm = pow_i64(p, m);
    k %= pm;
    if (k < 0) k += pm;
    if (m == 0) return one(p, 0, prec);
    CycElem e = zero(p, m, prec);
    std::int64_t ph = phi(p, m);
    if (k < ph) {
        e.c_[static_cast<std::size_t>(k)] = PadicScalar::one(p, prec);
    } else {
        // z^k = -sum_{j<p-1} z^(b + j*p^(m-1)) with b = k - phi(p^m)
        std::int64_t b = k - ph;
        std::int64_t step = pow_i64(p, m - 1);
        for (std::int64_t j = 0; j + 2 <= p; ++j)
            e.c_[static_cast<std::size_t>(b + j * step)] = PadicScalar::from_integer(p, prec, -1);
    }
    return e;
}

int CycElem::precision() const {
    int prec = c_[0].abs_precision();
    for (const auto& s : c_) prec = std::min(prec, s.abs_precision());
    return prec;
}

bool CycElem::is_zero() const {
    for (const auto& s : c_)
        if (!s.is_zero()) return false;
    return true;
}

void CycElem::align(CycElem& a, CycElem& b) {
    if (a.p_ != b.p_) throw LevelMismatch("cyclotomic elements over different primes");
    if (a.level_ < b.level_) a = a.embed(b.level_);
    if (b.level_ < a.level_) b = b.embed(a.level_);
}

CycElem CycElem::embed(int higher_level) const {
    if (higher_level == level_) return *this;
    if (higher_level < level_)
        throw LevelMismatch("cyclotomic embedding only goes to higher levels");
    CycElem out = zero(p_, higher_level, std::max(1, precision()));
    std::int64_t stride = pow_i64(p_, higher_level - level_);
    for (std::size_t i = 0; i < c_.size(); ++i)
        out.c_[i * static_cast<std::size_t>(stride)] = c_[i];
    return out;
}

CycElem CycElem::operator+(const CycElem& o) const {
    CycElem a = *this, b = o;
    align(a, b);
    for (std::size_t i = 0; i < a.c_.size(); ++i) a.c_[i] = a.c_[i] + b.c_[i];
    return a;
}

CycElem CycElem::operator-(const CycElem& o) const {
    CycElem a = *this, b = o;
    align(a, b);
    for (std::size_t i = 0; i < a.c_.size(); ++i) a.c_[i] = a.c_[i] - b.c_[i];
    return a;
}

CycElem CycElem::operator-() const {
    CycElem a = *this;
    for (auto& s : a.c_) s = -s;
    return a;
}

CycElem CycElem::scaled(const PadicScalar& s) const {
    CycElem a = *this;
    for (auto& x : a.c_) x = x * s;
    return a;
}

void CycElem::reduce_raw(std::vector<PadicScalar>& raw) const {
    std::int64_t ph = phi(p_, level_);
    std::int64_t step = level_ >= 1 ? pow_i64(p_, level_ - 1) : 1;
    for (std::size_t d = raw.size(); d-- > static_cast<std::size_t>(ph);) {
        PadicScalar c = raw[d];
        raw[d] = PadicScalar::zero(p_, c.prec_digits());
        // X^d = -sum_{j<p-1} X^(d-phi+j*p^(m-1))
        for (std::int64_t j = 0; j + 2 <= p_; ++j)
            raw[d - static_cast<std::size_t>(ph) + static_cast<std::size_t>(j * step)] =
                raw[d - static_cast<std::size_t>(ph) + static_cast<std::size_t>(j * step)] - c;
    }
    raw.resize(static_cast<std::size_t>(ph), PadicScalar::zero(p_, 1));
}

CycElem CycElem::operator*(const CycElem& o) const {
    CycElem a = *this, b = o;
    align(a, b);
    if (a.is_zero() || b.is_zero()) {
        // honest zero: precision of the zero side improved by the other side's
        // coefficient valuation lower bound
        const CycElem& z = a.is_zero() ? a : b;
        const CycElem& w = a.is_zero() ? b : a;
        Rat boost = w.is_zero() ? Rat(0) : w.coeff_min_valuation();
        int extra = 0;
        if (!boost.is_infinity() && boost.den() == 1) extra = static_cast<int>(boost.num());
        int prec = std::max(1, z.precision() + extra);
        return zero(p_, a.level_, prec);
    }
    std::size_t n = a.c_.size();
    int raw_prec = std::min(a.c_[0].prec_digits() + b.c_[0].prec_digits(),
                            PadicScalar::max_digits(p_));
    std::vector<PadicScalar> raw(2 * n - 1, PadicScalar::zero(p_, raw_prec));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            raw[i + j] = raw[i + j] + a.c_[i] * b.c_[j];
    a.reduce_raw(raw);
    a.c_ = std::move(raw);
    return a;
}

CycElem CycElem::pow(std::int64_t k) const {
    if (k < 0) return invert().pow(-k);
    CycElem acc = one(p_, level_, std::max(1, precision()));
    CycElem b = *this;
    std::uint64_t e = static_cast<std::uint64_t>(k);
    while (e) {
        if (e & 1) acc = acc * b;
        e >>= 1;
        if (e) b = b * b;
    }
    return acc;
}

CycElem CycElem::invert() const {
    if (is_zero()) throw NotInvertible("cyclotomic element is 0 at the tracked precision");
    std::size_t n = c_.size();
    if (n == 1) {
        CycElem out = *this;
        out.c_[0] = c_[0].invert();
        return out;
    }
    // multiplication-by-a matrix in the power basis; solve M x = e_0
    Matrix<PadicScalar> m(static_cast<int>(n), static_cast<int>(n), PadicScalar::zero(p_, 1));
    std::vector<PadicScalar> col(c_.begin(), c_.end());
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < n; ++i) m.at(static_cast<int>(i), static_cast<int>(j)) = col[i];
        if (j + 1 < n) {
            // multiply column by X and reduce
            std::vector<PadicScalar> raw(n + 1, PadicScalar::zero(p_, col[0].prec_digits()));
            for (std::size_t i = 0; i < n; ++i) raw[i + 1] = col[i];
            reduce_raw(raw);
            col = std::move(raw);
        }
    }
    std::vector<PadicScalar> rhs(n, PadicScalar::zero(p_, c_[0].prec_digits()));
    rhs[0] = PadicScalar::one(p_, c_[0].prec_digits());
    std::vector<PadicScalar> x = solve(std::move(m), std::move(rhs));
    CycElem out = *this;
    out.c_.assign(x.begin(), x.end());
    return out;
}

bool CycElem::operator==(const CycElem& o) const {
    CycElem d = *this - o;
    return d.is_zero();
}

Rat CycElem::coeff_min_valuation() const {
    Rat best = Rat::infinity();
    for (const auto& s : c_) {
        Rat v = s.valuation();
        if (v < best) best = v;
    }
    return best;
}

Rat CycElem::valuation() const {
    if (is_zero()) return Rat::infinity();
    if (level_ == 0) return c_[0].valuation();

    // rescale to a p-integral polynomial
    int scale = 0;
    for (const auto& s : c_) scale = std::max(scale, s.denom_exp());
    std::vector<PadicScalar> a;
    a.reserve(c_.size());
    for (const auto& s : c_) a.push_back(s.shift_p(scale));

    int deg = static_cast<int>(a.size()) - 1;
    while (deg > 0 && a[static_cast<std::size_t>(deg)].is_zero()) --deg;
    if (deg == 0) return a[0].valuation() - Rat(scale);

    std::int64_t ph = phi(p_, level_);
    std::int64_t step = pow_i64(p_, level_ - 1);
    int prec = 1;
    for (const auto& s : a) prec = std::max(prec, s.prec_digits());
    prec = std::min(prec, PadicScalar::max_digits(p_));

    // Sylvester matrix of (Phi_{p^m}, a): first deg rows carry Phi, next phi
    // rows carry a, both with descending coefficients.
    int n = static_cast<int>(ph) + deg;
    Matrix<PadicScalar> syl(n, n, PadicScalar::zero(p_, prec));
    PadicScalar one_s = PadicScalar::one(p_, prec);
    for (int i = 0; i < deg; ++i) {
        // Phi coefficients: 1 at exponents j*p^(m-1), descending order
        for (std::int64_t j = 0; j < p_; ++j) {
            std::int64_t expo = j * step;               // coefficient of X^expo is 1
            int col = i + static_cast<int>(ph - expo);  // descending: offset phi - expo
            syl.at(i, col) = one_s;
        }
    }
    for (int i = 0; i < static_cast<int>(ph); ++i)
        for (int j = 0; j <= deg; ++j)
            syl.at(deg + i, i + j) = a[static_cast<std::size_t>(deg - j)];

    PadicScalar det = determinant(std::move(syl));
    if (det.is_zero())
        throw PrecisionExhausted(
            "resultant vanishes at the tracked precision; valuation is only a lower bound");
    Rat v = det.valuation();
    return Rat(v.num(), v.den() * ph) - Rat(scale);
}

std::string CycElem::str() const {
    std::string out;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].is_zero()) continue;
        if (!out.empty()) out += " + ";
        out += c_[i].str();
        if (i == 1) out += "*z";
        if (i > 1) out += "*z^" + std::to_string(i);
    }
    if (out.empty()) out = "0";
    return out;
}

}  // namespace ftv
