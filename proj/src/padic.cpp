#include "ftv/padic.hpp"

#include <algorithm>
#include <cstdlib>

namespace ftv {

namespace {

int digits_per_limb(std::int64_t p) {
    int k = 0;
    std::uint64_t b = 1;
    while (b * static_cast<std::uint64_t>(p) < (1ull << 31)) {
        b *= static_cast<std::uint64_t>(p);
        ++k;
    }
    return k;
}

std::uint64_t pow_u64(std::uint64_t b, int e) {
    std::uint64_t r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

// inverse of a mod p for small ints
std::int64_t inv_mod_small(std::int64_t a, std::int64_t p) {
    std::int64_t t = 0, newt = 1, r = p, newr = a % p;
    while (newr != 0) {
        std::int64_t q = r / newr;
        std::int64_t tmp = t - q * newt;
        t = newt;
        newt = tmp;
        tmp = r - q * newr;
        r = newr;
        newr = tmp;
    }
    if (r != 1) throw NotInvertible("no inverse mod p");
    return ((t % p) + p) % p;
}

}  // namespace

int PadicScalar::max_digits(std::int64_t p) { return digits_per_limb(p) * kMaxLimbs; }

void PadicScalar::init_shape(std::int64_t p, int prec_digits) {
    if (p < 3) throw SchemaViolation("prime must be an odd prime >= 3 (p = 2 is rejected)");
    if (p % 2 == 0) throw SchemaViolation("prime must be odd");
    for (std::int64_t d = 3; d * d <= p; d += 2)
        if (p % d == 0) throw SchemaViolation(std::to_string(p) + " is not prime");
    if (prec_digits <= 0) throw PrecisionExhausted("requested precision is not positive");
    if (prec_digits > max_digits(p))
        throw SchemaViolation("precision " + std::to_string(prec_digits) +
                              " exceeds supported maximum " + std::to_string(max_digits(p)) +
                              " for p = " + std::to_string(p));
    p_ = p;
    k_ = digits_per_limb(p);
    base_ = pow_u64(static_cast<std::uint64_t>(p), k_);
    prec_ = prec_digits;
    denom_exp_ = 0;
    r_ = Limbs{};
    r_.n = limbs_for(prec_, k_);
}

void PadicScalar::raw_mask_top() {
    r_.n = limbs_for(prec_, k_);
    for (int i = r_.n; i < kMaxLimbs; ++i) r_.d[i] = 0;
    int top_digits = prec_ - k_ * (r_.n - 1);
    std::uint64_t top_mod = pow_u64(static_cast<std::uint64_t>(p_), top_digits);
    r_.d[r_.n - 1] = static_cast<std::uint32_t>(r_.d[r_.n - 1] % top_mod);
}

bool PadicScalar::raw_is_zero() const {
    for (int i = 0; i < r_.n; ++i)
        if (r_.d[i] != 0) return false;
    return true;
}

int PadicScalar::raw_val_p() const {
    PadicScalar tmp = *this;
    int v = 0;
    while (tmp.r_.d[0] % static_cast<std::uint32_t>(p_) == 0) {
        tmp.raw_div_p();
        ++v;
        if (v > prec_) break;  // all zero; caller guards
    }
    return v;
}

void PadicScalar::raw_div_p() {
    std::uint64_t carry = 0;
    for (int i = r_.n - 1; i >= 0; --i) {
        std::uint64_t cur = carry * base_ + r_.d[i];
        r_.d[i] = static_cast<std::uint32_t>(cur / static_cast<std::uint64_t>(p_));
        carry = cur % static_cast<std::uint64_t>(p_);
    }
}

void PadicScalar::raw_mul_p(int times) {
    for (int t = 0; t < times; ++t) {
        std::uint64_t carry = 0;
        for (int i = 0; i < r_.n; ++i) {
            std::uint64_t cur = static_cast<std::uint64_t>(r_.d[i]) * static_cast<std::uint64_t>(p_) + carry;
            r_.d[i] = static_cast<std::uint32_t>(cur % base_);
            carry = cur / base_;
        }
        if (carry != 0 && r_.n < kMaxLimbs) {
            r_.d[r_.n] = static_cast<std::uint32_t>(carry);
            ++r_.n;
        }
    }
}

PadicScalar PadicScalar::with_limbs(Limbs l, int prec, int denom) const {
    PadicScalar out;
    out.p_ = p_;
    out.k_ = k_;
    out.base_ = base_;
    out.prec_ = std::min(prec, max_digits(p_));
    out.denom_exp_ = denom;
    out.r_ = l;
    out.raw_mask_top();
    out.normalize();
    return out;
}

void PadicScalar::normalize() {
    if (raw_is_zero()) {
        prec_ -= denom_exp_;
        denom_exp_ = 0;
        if (prec_ <= 0) throw PrecisionExhausted("value is zero with no surviving precision");
        r_ = Limbs{};
        r_.n = limbs_for(prec_, k_);
        return;
    }
    while (denom_exp_ > 0 && r_.d[0] % static_cast<std::uint32_t>(p_) == 0) {
        raw_div_p();
        --denom_exp_;
        --prec_;
    }
    raw_mask_top();
    if (prec_ - denom_exp_ <= 0)
        throw PrecisionExhausted("tracked precision dropped to zero");
}

PadicScalar PadicScalar::from_integer(std::int64_t p, int prec_digits, std::int64_t value) {
    PadicScalar out;
    out.init_shape(p, prec_digits);
    bool neg = value < 0;
    std::uint64_t v = neg ? static_cast<std::uint64_t>(-(value + 1)) + 1 : static_cast<std::uint64_t>(value);
    out.raw_set_u64(v);
    out.raw_mask_top();
    if (neg && !out.raw_is_zero()) {
        // residue := p^N - residue
        PadicScalar mod = out;
        mod.r_ = Limbs{};
        mod.r_.n = limbs_for(prec_digits, out.k_);
        // p^N as limb pattern: p^(N - K*(n-1)) at the top limb position would
        // overflow the masked range, so subtract via complement: -x = (B^n - x) mod p^N.
        std::uint64_t borrow = 0;
        Limbs res{};
        res.n = out.r_.n;
        for (int i = 0; i < res.n; ++i) {
            std::int64_t cur = -static_cast<std::int64_t>(out.r_.d[i]) - static_cast<std::int64_t>(borrow);
            if (cur < 0) {
                cur += static_cast<std::int64_t>(out.base_);
                borrow = 1;
            } else {
                borrow = 0;
            }
            res.d[i] = static_cast<std::uint32_t>(cur);
        }
        out.r_ = res;
        out.raw_mask_top();
    }
    out.normalize();
    return out;
}

void PadicScalar::raw_set_u64(std::uint64_t v) {
    r_ = Limbs{};
    int i = 0;
    while (v != 0 && i < kMaxLimbs) {
        r_.d[i++] = static_cast<std::uint32_t>(v % base_);
        v /= base_;
    }
    r_.n = limbs_for(prec_, k_);
}

PadicScalar PadicScalar::zero(std::int64_t p, int prec_digits) {
    return from_integer(p, prec_digits, 0);
}

PadicScalar PadicScalar::one(std::int64_t p, int prec_digits) {
    return from_integer(p, prec_digits, 1);
}

PadicScalar PadicScalar::from_ratio(std::int64_t p, int prec_digits, std::int64_t num,
                                    std::int64_t den) {
    if (den == 0) throw NotInvertible("zero denominator");
    int e = 0;
    while (den % p == 0) {
        den /= p;
        ++e;
    }
    PadicScalar n = from_integer(p, prec_digits + e, num);
    PadicScalar d = from_integer(p, prec_digits + e, den);
    PadicScalar r = n * d.invert();
    return r.shift_p(-e);
}

PadicScalar::Limbs PadicScalar::raw_add(const PadicScalar& a, const PadicScalar& b, int) {
    Limbs out{};
    out.n = std::max(a.r_.n, b.r_.n);
    std::uint64_t carry = 0;
    for (int i = 0; i < out.n; ++i) {
        std::uint64_t cur = carry;
        if (i < a.r_.n) cur += a.r_.d[i];
        if (i < b.r_.n) cur += b.r_.d[i];
        out.d[i] = static_cast<std::uint32_t>(cur % a.base_);
        carry = cur / a.base_;
    }
    if (carry && out.n < kMaxLimbs) out.d[out.n++] = static_cast<std::uint32_t>(carry);
    return out;
}

PadicScalar::Limbs PadicScalar::raw_sub(const PadicScalar& a, const PadicScalar& b, int prec) {
    // (a - b) mod p^prec; when a < b wrap by adding B^n and masking afterwards.
    Limbs out{};
    out.n = limbs_for(prec, a.k_);
    std::int64_t borrow = 0;
    for (int i = 0; i < out.n; ++i) {
        std::int64_t cur = -borrow;
        if (i < a.r_.n) cur += a.r_.d[i];
        if (i < b.r_.n) cur -= b.r_.d[i];
        if (cur < 0) {
            cur += static_cast<std::int64_t>(a.base_);
            borrow = 1;
        } else {
            borrow = 0;
        }
        out.d[i] = static_cast<std::uint32_t>(cur);
    }
    // A final borrow means the stored value is a - b + B^n; since p^prec
    // divides B^n (n = limbs_for(prec)), the caller's mask already reduces it
    // to the right residue mod p^prec.
    (void)borrow;
    (void)prec;
    return out;
}

PadicScalar::Limbs PadicScalar::raw_mul(const PadicScalar& a, const PadicScalar& b, int prec) {
    int need = limbs_for(prec, a.k_);
    std::array<std::uint64_t, 2 * kMaxLimbs> acc{};
    int an = a.r_.n, bn = b.r_.n;
    for (int i = 0; i < an && i < need; ++i) {
        if (a.r_.d[i] == 0) continue;
        std::uint64_t ai = a.r_.d[i];
        std::uint64_t carry = 0;
        for (int j = 0; j < bn && i + j < need + 1; ++j) {
            unsigned __int128 cur = static_cast<unsigned __int128>(ai) * b.r_.d[j] + acc[i + j] + carry;
            acc[i + j] = static_cast<std::uint64_t>(cur % a.base_);
            carry = static_cast<std::uint64_t>(cur / a.base_);
        }
        int j = bn;
        while (carry && i + j < need + 1) {
            unsigned __int128 cur = static_cast<unsigned __int128>(acc[i + j]) + carry;
            acc[i + j] = static_cast<std::uint64_t>(cur % a.base_);
            carry = static_cast<std::uint64_t>(cur / a.base_);
            ++j;
        }
    }
    Limbs out{};
    out.n = need;
    for (int i = 0; i < need; ++i) out.d[i] = static_cast<std::uint32_t>(acc[i]);
    return out;
}

PadicScalar PadicScalar::operator+(const PadicScalar& o) const {
    if (p_ != o.p_) throw LevelMismatch("scalar primes differ");
    int e = std::max(denom_exp_, o.denom_exp_);
    PadicScalar a = *this, b = o;
    a.raw_mul_p(e - denom_exp_);
    a.prec_ = std::min(prec_ + (e - denom_exp_), max_digits(p_));
    b.raw_mul_p(e - o.denom_exp_);
    b.prec_ = std::min(o.prec_ + (e - o.denom_exp_), max_digits(p_));
    int np = std::min(a.prec_, b.prec_);
    return with_limbs(raw_add(a, b, np), np, e);
}

PadicScalar PadicScalar::operator-(const PadicScalar& o) const {
    if (p_ != o.p_) throw LevelMismatch("scalar primes differ");
    int e = std::max(denom_exp_, o.denom_exp_);
    PadicScalar a = *this, b = o;
    a.raw_mul_p(e - denom_exp_);
    a.prec_ = std::min(prec_ + (e - denom_exp_), max_digits(p_));
    b.raw_mul_p(e - o.denom_exp_);
    b.prec_ = std::min(o.prec_ + (e - o.denom_exp_), max_digits(p_));
    int np = std::min(a.prec_, b.prec_);
    return with_limbs(raw_sub(a, b, np), np, e);
}

PadicScalar PadicScalar::operator-() const {
    PadicScalar z = zero(p_, prec_);
    z.denom_exp_ = 0;
    return z.with_limbs(raw_sub(z, *this, prec_), prec_, denom_exp_);
}

PadicScalar PadicScalar::operator*(const PadicScalar& o) const {
    if (p_ != o.p_) throw LevelMismatch("scalar primes differ");
    int va = raw_is_zero() ? prec_ : raw_val_p();
    int vb = o.raw_is_zero() ? o.prec_ : o.raw_val_p();
    int np = std::min({prec_ + vb, o.prec_ + va, prec_ + o.prec_, max_digits(p_)});
    return with_limbs(raw_mul(*this, o, np), np, denom_exp_ + o.denom_exp_);
}

PadicScalar PadicScalar::invert() const {
    if (raw_is_zero()) throw NotInvertible("value indistinguishable from 0 at current precision");
    int w = raw_val_p();
    PadicScalar u = *this;
    for (int i = 0; i < w; ++i) u.raw_div_p();
    int rel = prec_ - w;  // unit digits of u
    if (rel <= 0) throw PrecisionExhausted("no unit digits survive for inversion");
    u.prec_ = rel;
    u.denom_exp_ = 0;
    u.raw_mask_top();

    // Newton iteration x <- x(2 - u x) mod p^rel.
    PadicScalar x = from_integer(p_, rel, inv_mod_small(static_cast<std::int64_t>(u.r_.d[0] % p_), p_));
    PadicScalar two = from_integer(p_, rel, 2);
    for (int it = 0; it < 2 * kMaxLimbs; ++it) {
        PadicScalar t = two - (u * x);
        PadicScalar nx = x * t;
        if (nx == x) {
            x = nx;
            break;
        }
        x = nx;
    }

    // value = u^{-1} * p^(denom_exp - w)
    int shift = denom_exp_ - w;
    return x.shift_p(shift);
}

PadicScalar PadicScalar::shift_p(int t) const {
    PadicScalar out = *this;
    if (t >= 0) {
        if (denom_exp_ >= t) {
            out.denom_exp_ -= t;
        } else {
            int up = t - denom_exp_;
            out.denom_exp_ = 0;
            out.raw_mul_p(up);
            out.prec_ = std::min(prec_ + up, max_digits(p_));
            out.raw_mask_top();
        }
    } else {
        out.denom_exp_ += -t;
    }
    out.normalize();
    return out;
}

PadicScalar PadicScalar::pow(std::int64_t k) const {
    if (k < 0) return invert().pow(-k);
    PadicScalar acc = one(p_, prec_);
    PadicScalar b = *this;
    std::uint64_t e = static_cast<std::uint64_t>(k);
    while (e) {
        if (e & 1) acc = acc * b;
        e >>= 1;
        if (e) b = b * b;
    }
    return acc;
}

bool PadicScalar::is_zero() const { return raw_is_zero(); }

Rat PadicScalar::valuation() const {
    if (raw_is_zero()) return Rat::infinity();
    return Rat(raw_val_p() - denom_exp_);
}

bool PadicScalar::operator==(const PadicScalar& o) const {
    if (p_ != o.p_) return false;
    PadicScalar d = *this - o;
    return d.is_zero();
}

std::int64_t PadicScalar::residue_mod_p() const {
    if (denom_exp_ != 0) throw PrecisionExhausted("residue_mod_p on non-integral value");
    return static_cast<std::int64_t>(r_.d[0] % static_cast<std::uint32_t>(p_));
}

std::int64_t PadicScalar::residue_mod_pk(int k) const {
    if (denom_exp_ != 0) throw PrecisionExhausted("residue_mod_pk on non-integral value");
    if (k > prec_) throw PrecisionExhausted("residue requested beyond tracked precision");
    std::uint64_t mod = 1;
    for (int i = 0; i < k; ++i) mod *= static_cast<std::uint64_t>(p_);
    unsigned __int128 acc = 0;
    unsigned __int128 bpow = 1;
    for (int i = 0; i < r_.n; ++i) {
        acc = (acc + bpow * r_.d[i]) % mod;
        bpow = (bpow * base_) % mod;
    }
    return static_cast<std::int64_t>(acc);
}

PadicScalar PadicScalar::teichmuller(std::int64_t p, int prec_digits, std::int64_t u) {
    if (u % p == 0) throw NotInvertible("teichmuller lift needs gcd(u, p) = 1");
    PadicScalar x = from_integer(p, prec_digits, u);
    for (int it = 0; it <= prec_digits + 3; ++it) {
        PadicScalar nx = x.pow(p);
        if (nx == x) return nx;
        x = nx;
    }
    return x;
}

std::string PadicScalar::str() const {
    // decimal digits of the residue
    std::string dec;
    PadicScalar tmp = *this;
    if (tmp.raw_is_zero()) {
        dec = "0";
    } else {
        while (!tmp.raw_is_zero()) {
            std::uint64_t rem = 0;
            for (int i = tmp.r_.n - 1; i >= 0; --i) {
                std::uint64_t cur = rem * base_ + tmp.r_.d[i];
                tmp.r_.d[i] = static_cast<std::uint32_t>(cur / 1000000000ull);
                rem = cur % 1000000000ull;
            }
            std::string chunk = std::to_string(rem);
            if (!tmp.raw_is_zero())
                chunk = std::string(9 - chunk.size(), '0') + chunk;
            dec = chunk + dec;
        }
    }
    if (denom_exp_ > 0)
        dec += "*" + std::to_string(p_) + "^-" + std::to_string(denom_exp_);
    return dec;
}

}  // namespace ftv
