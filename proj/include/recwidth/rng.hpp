#pragma once
#include "recwidth/field.hpp"

namespace recwidth {

// splitmix64 stream (Steele/Lea/Flood constants); seeded generators shared by
// the CLI and the test suite so random cases reproduce across builds.
struct SplitMix64 {
    u64 state;

    explicit SplitMix64(u64 seed) : state(seed) {}

    u64 next() {
        u64 z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in [0, bound)
    u64 below(u64 bound) { return next() % bound; }

    FieldElement field_element() { return FieldElement((i64)(next() % field().p)); }

    FieldElement nonzero() {
        FieldElement v = field_element();
        while (v.is_zero()) v = field_element();
        return v;
    }
};

} // namespace recwidth
