#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "borderforge/bba.hpp"
#include "borderforge/order_ideal.hpp"
#include "borderforge/polynomial.hpp"

namespace borderforge {

using Rng = std::mt19937_64;

/// Degree d ~ U[0, d_max], term count t ~ U[0, min(t_max, C(n+d, n))], t distinct
/// terms of degree <= d with uniform nonzero coefficients.
Polynomial random_polynomial(const Ring& ring, unsigned d_max, std::size_t t_max, Rng& rng);

struct OrderIdealSample {
  OrderIdeal ideal;
  std::size_t iterations = 0;  // queue pops
};

/// Box-cell sampler. Throws InvalidArity for n < 2 or when caps.size() != n.
OrderIdealSample sample_order_ideal(const Ring& ring, const std::vector<unsigned>& caps, Rng& rng,
                                    std::optional<std::size_t> iteration_limit = std::nullopt);
/// {1, x, ..., x^d} for a single variable.
OrderIdeal univariate_order_ideal(const Ring& ring, unsigned d);

using Point = std::vector<Fp>;

/// nu distinct uniform points of F_p^n. Throws TooManyPoints when nu > p^n.
std::vector<Point> sample_points(const Ring& ring, std::size_t nu, Rng& rng);

/// Evaluation matrix: rows are points, columns are terms.
MatrixFp evaluation_matrix(const Ring& ring, const std::vector<Term>& terms, const std::vector<Point>& points);

/// O-border basis of the vanishing ideal of P from the nullspace of [O(P) | border(O)(P)].
/// Throws DimensionMismatch when |O| != |P| and RankDeficient when O(P) is singular.
BorderBasis border_basis_from_points(const Ring& ring, const OrderIdeal& O, const std::vector<Point>& P,
                                     std::size_t* nullity = nullptr);

/// F = A G with A an r x |G| matrix of random polynomials (degree <= d_A, <= t_A terms).
/// Zero rows are resampled.
std::vector<Polynomial> backward_transform(const Ring& ring, const std::vector<Polynomial>& G, std::size_t r,
                                           unsigned d_A, std::size_t t_A, Rng& rng);

enum class Equality { Equal, Different, Undetermined };
const char* to_string(Equality e);

/// Decides <F> == <G> by computing a border basis H of <F> and checking that
/// every h reduces to zero modulo G and every g to zero modulo H. Undetermined
/// when the computation of H exceeds its degree cap.
Equality verify_ideal_equality(const Ring& ring, const std::vector<Polynomial>& F, const BorderBasis& G,
                               std::optional<unsigned> degree_cap = std::nullopt);

struct InstanceParams {
  unsigned max_degree = 2;           // generator degree D: O lies in degree <= D - 1
  std::size_t rows = 0;              // r; 0 means n + 1
  unsigned transform_degree = 1;     // d_A
  std::size_t transform_terms = 10;  // t_A
  std::vector<unsigned> degree_caps; // per-variable O caps, used untruncated; empty: derived from D
};

/// A sampled (O, P, G) and its transform F.
struct Instance {
  std::uint64_t seed = 0;
  OrderIdeal order_ideal;
  std::vector<Point> points;
  BorderBasis basis;
  std::vector<Polynomial> F;
  std::size_t rank_deficient = 0;  // point sets rejected along the way
};

/// O with caps D - 1 truncated to total degree D - 1 (or the explicit caps), P with |P| = |O| (50
/// attempts per O), G from the points, F = A G.
Instance generate_instance(const Ring& ring, const InstanceParams& params, std::uint64_t seed);

}  // namespace borderforge
