#pragma once

#include "couplecheck/analysis.hpp"
#include "couplecheck/lp.hpp"

#include <array>
#include <random>

namespace couplecheck::support {

using Rng = std::mt19937_64;

/// Multiple of 1/64 in [lo, hi] (numerators).
Rational grid_value(Rng& rng, int lo, int hi);

/// Four-cell joint on the 1/64 grid, uniformly over compositions of 64.
BinaryTable random_table(Rng& rng);

/// Table on the 1/64 grid with the given marginals P(A=+1) = p, P(B=+1) = q.
BinaryTable random_table_with_marginals(Rng& rng, const Rational& p, const Rational& q);

/// Four independent random tables (generally not marginally selective).
std::array<BinaryTable, 4> random_tables(Rng& rng);

/// Random tables whose A_i and B_j marginals agree across contexts.
std::array<BinaryTable, 4> random_selective_tables(Rng& rng);

/// Tables where the CHSH side equals the extended bound exactly. When
/// `selective` is set the marginals agree across contexts (bound = 2).
std::array<BinaryTable, 4> boundary_tables(Rng& rng, bool selective);

BinaryTable correlated_uniform(const Rational& correlation);

/// Random dense system, n <= 6, coefficients in {-2..2}/2. Roughly half are
/// built feasible by construction (b = A x0 with x0 >= 0).
LinearSystem random_linear_system(Rng& rng);

}  // namespace couplecheck::support
