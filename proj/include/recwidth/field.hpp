#pragma once
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace recwidth {

using u32 = uint32_t;
using u64 = uint64_t;
using i64 = int64_t;

// Runtime field parameters. Default prime 998244353 = 119*2^23 + 1 with
// primitive root 3; RECWIDTH_FIELD_P overrides it (must be an NTT-friendly
// prime: v_2(p-1) >= 18 so every transform size used here exists).
struct FieldConfig {
    u32 p = 998244353;
    u32 root = 3;
    int two_adic = 23;
};

const FieldConfig& field();

struct FieldElement {
    u32 value = 0;

    FieldElement() = default;
    FieldElement(i64 v) {
        u32 p = field().p;
        i64 m = v % (i64)p;
        if (m < 0) m += p;
        value = (u32)m;
    }

    static FieldElement raw(u32 v) {
        FieldElement e;
        e.value = v;
        return e;
    }

    bool is_zero() const { return value == 0; }

    FieldElement operator+(FieldElement o) const {
        u32 s = value + o.value;
        if (s >= field().p) s -= field().p;
        return raw(s);
    }
    FieldElement operator-(FieldElement o) const {
        u32 s = value >= o.value ? value - o.value : value + field().p - o.value;
        return raw(s);
    }
    FieldElement operator-() const {
        return raw(value == 0 ? 0 : field().p - value);
    }
    FieldElement operator*(FieldElement o) const {
        return raw((u32)((u64)value * o.value % field().p));
    }
    FieldElement& operator+=(FieldElement o) { return *this = *this + o; }
    FieldElement& operator-=(FieldElement o) { return *this = *this - o; }
    FieldElement& operator*=(FieldElement o) { return *this = *this * o; }
    bool operator==(FieldElement o) const { return value == o.value; }
    bool operator!=(FieldElement o) const { return value != o.value; }

    FieldElement pow(u64 e) const {
        FieldElement b = *this, r = raw(1);
        while (e) {
            if (e & 1) r *= b;
            b *= b;
            e >>= 1;
        }
        return r;
    }
    FieldElement inv() const {
        if (value == 0) throw std::runtime_error("division by zero in field");
        return pow(field().p - 2);
    }
    FieldElement operator/(FieldElement o) const { return *this * o.inv(); }
};

using Vec = std::vector<FieldElement>;

inline FieldElement dot(const Vec& a, const Vec& b) {
    FieldElement s = 0;
    size_t n = a.size() < b.size() ? a.size() : b.size();
    for (size_t i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
}

} // namespace recwidth
