#pragma once

#include <cstdint>
#include <numeric>
#include <string>

namespace ftv {

// Valuations of cyclotomic elements live in (1/phi(p^m))*Z with small
// numerators; int64 is ample.
class Rat {
public:
    Rat() : num_(0), den_(1), inf_(false) {}
    Rat(std::int64_t n) : num_(n), den_(1), inf_(false) {}
    Rat(std::int64_t n, std::int64_t d) : num_(n), den_(d), inf_(false) { normalize(); }

    static Rat infinity() {
        Rat r;
        r.inf_ = true;
        return r;
    }

    bool is_infinity() const { return inf_; }
    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    Rat operator+(const Rat& o) const {
        if (inf_ || o.inf_) return infinity();
        return Rat(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
    }
    Rat operator-(const Rat& o) const {
        if (inf_ || o.inf_) return infinity();
        return Rat(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
    }
    Rat operator-() const {
        if (inf_) return infinity();
        return Rat(-num_, den_);
    }

    bool operator==(const Rat& o) const {
        if (inf_ || o.inf_) return inf_ == o.inf_;
        return num_ == o.num_ && den_ == o.den_;
    }
    bool operator!=(const Rat& o) const { return !(*this == o); }
    bool operator<(const Rat& o) const {
        if (inf_) return false;
        if (o.inf_) return true;
        return num_ * o.den_ < o.num_ * den_;
    }
    bool operator<=(const Rat& o) const { return *this < o || *this == o; }

    std::string str() const {
        if (inf_) return "+inf";
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

private:
    void normalize() {
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
        if (num_ == 0) den_ = 1;
    }

    std::int64_t num_, den_;
    bool inf_;
};

}  // namespace ftv
