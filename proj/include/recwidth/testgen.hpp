#pragma once
#include "recwidth/displacement.hpp"
#include "recwidth/quasisep.hpp"
#include "recwidth/recurrence.hpp"
#include "recwidth/rng.hpp"

namespace recwidth {

// Deterministic random fixtures shared by the property tests and the
// verification CLI. Every generator is a pure function of its arguments.

// random descriptor of the requested kind (band/quasi orders stay <= 2)
RDescriptor gen_descriptor(RKind kind, size_t n, SplitMix64& rng);

// Random spec with the given width/rank over a fresh descriptor of `kind`.
// hard_scale = false keeps g_{i,0} = 1 (degree (1,0)); hard_scale = true
// uses degree (1,1) with a degree-1 g_{i,0} where the descriptor makes the
// dense oracle cheap (shift/companion/diagonal) and a random nonzero
// constant otherwise.
RecurrenceSpec gen_spec(RKind kind, size_t n, size_t t, size_t r,
                        bool hard_scale, SplitMix64& rng);

// random quasiseparable matrix of order <= ord (dense + structured form)
QuasiPtr gen_quasisep(size_t n, size_t ord, SplitMix64& rng);
// lower triangular variant with the given diagonal (spectrum under control)
QuasiPtr gen_quasisep_triangular(size_t n, size_t ord, const Vec& diag,
                                 SplitMix64& rng);

// random displacement representation with disjoint (resp. non-reciprocal)
// spectra; l_kind must be band/diagonal/quasi
DisplacementRep gen_displacement(DispOp op, RKind l_kind, RKind r_kind,
                                 size_t n, size_t r, SplitMix64& rng);

// random basic triangular spec (modulus X^n, g_{i,0} = 1, unit diagonal
// profile suitable for triangular_solve)
RecurrenceSpec gen_solve_spec(size_t n, size_t t, SplitMix64& rng);

Vec gen_vec(size_t n, SplitMix64& rng);

} // namespace recwidth
