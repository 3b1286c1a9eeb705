#pragma once

#include <cstdint>
#include <string>

#include "charspace/errors.hpp"

namespace charspace {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;

/// Prime field GF(p), 2 <= p < 2^31. Residues are stored as u32 in [0, p);
/// products go through u64 so no intermediate ever overflows.
class Fp {
public:
    explicit Fp(u32 prime) : p_(prime) {
        if (!is_prime(prime)) {
            throw ValidationError("field modulus " + std::to_string(prime) +
                                  " is not a prime in [2, 2^31)");
        }
    }

    u32 p() const { return p_; }

    u32 reduce(i64 x) const {
        i64 r = x % static_cast<i64>(p_);
        if (r < 0) r += p_;
        return static_cast<u32>(r);
    }

    u32 add(u32 a, u32 b) const {
        u32 s = a + b;
        return s >= p_ ? s - p_ : s;
    }

    u32 sub(u32 a, u32 b) const { return a >= b ? a - b : a + p_ - b; }

    u32 neg(u32 a) const { return a == 0 ? 0 : p_ - a; }

    u32 mul(u32 a, u32 b) const {
        return static_cast<u32>((static_cast<u64>(a) * b) % p_);
    }

    u32 pow(u32 a, u64 e) const {
        u32 r = 1 % p_;
        u32 base = a % p_;
        while (e > 0) {
            if (e & 1) r = mul(r, base);
            base = mul(base, base);
            e >>= 1;
        }
        return r;
    }

    u32 inv(u32 a) const {
        if (a % p_ == 0) throw Error("division by zero in GF(p)");
        return pow(a, p_ - 2);
    }

    bool operator==(const Fp& o) const { return p_ == o.p_; }
    bool operator!=(const Fp& o) const { return p_ != o.p_; }

    static bool is_prime(u32 n) {
        if (n < 2 || n >= (1u << 31)) return false;
        if (n < 4) return true;
        if (n % 2 == 0) return false;
        for (u32 d = 3; static_cast<u64>(d) * d <= n; d += 2) {
            if (n % d == 0) return false;
        }
        return true;
    }

private:
    u32 p_;
};

} // namespace charspace
