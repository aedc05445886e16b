#include "borderforge/sampling.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <unordered_set>

#include "borderforge/errors.hpp"

namespace borderforge {

namespace {

std::uint64_t uniform(Rng& rng, std::uint64_t lo, std::uint64_t hi) {
  return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng);
}

Fp nonzero(const PrimeField& F, Rng& rng) {
  return Fp{static_cast<std::uint32_t>(uniform(rng, 1, F.modulus() - 1))};
}

Fp eval_term(const PrimeField& F, const Term& t, const Point& x) {
  Fp r = F.one();
  for (std::size_t i = 0; i < x.size(); ++i) {
    const unsigned e = t.exponent(i);
    if (e != 0) r = F.mul(r, F.pow(x[i], e));
  }
  return r;
}

struct Cell {
  std::vector<unsigned> l;
  std::vector<unsigned> u;

  bool valid() const {
    std::size_t differ = 0;
    unsigned spread = 0;
    for (std::size_t i = 0; i < l.size(); ++i) {
      if (l[i] != u[i]) ++differ;
      spread = std::max(spread, u[i] - l[i]);
    }
    return differ >= 2 && spread >= 2;
  }
};

}  // namespace

Polynomial random_polynomial(const Ring& ring, unsigned d_max, std::size_t t_max, Rng& rng) {
  const auto d = static_cast<unsigned>(uniform(rng, 0, d_max));
  auto pool = terms_up_to_degree(ring.nvars(), d);
  const std::size_t t = uniform(rng, 0, std::min<std::uint64_t>(t_max, pool.size()));
  std::vector<std::pair<Term, Fp>> picked;
  picked.reserve(t);
  for (std::size_t i = 0; i < t; ++i) {
    const std::size_t j = uniform(rng, i, pool.size() - 1);
    std::swap(pool[i], pool[j]);
    picked.emplace_back(pool[i], nonzero(ring.field(), rng));
  }
  return Polynomial::from_terms(ring, std::move(picked));
}

OrderIdealSample sample_order_ideal(const Ring& ring, const std::vector<unsigned>& caps, Rng& rng,
                                    std::optional<std::size_t> iteration_limit) {
  const std::size_t n = ring.nvars();
  if (n < 2) throw InvalidArity("order ideal sampling needs at least two variables");
  if (caps.size() != n) {
    throw InvalidArity("expected " + std::to_string(n) + " degree caps, got " + std::to_string(caps.size()));
  }
  std::deque<Cell> queue{Cell{std::vector<unsigned>(n, 0), caps}};
  std::vector<std::pair<std::vector<unsigned>, std::vector<unsigned>>> boxes;
  std::size_t iterations = 0;
  while (!queue.empty() && (!iteration_limit || iterations < *iteration_limit)) {
    Cell c = std::move(queue.front());
    queue.pop_front();
    ++iterations;
    std::vector<unsigned> p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = static_cast<unsigned>(uniform(rng, c.l[i], c.u[i]));
    for (std::size_t i = 0; i < n; ++i) {
      Cell child{c.l, p};
      child.l[i] = p[i];
      child.u[i] = c.u[i];
      if (child.valid()) queue.push_back(std::move(child));
    }
    boxes.emplace_back(std::move(c.l), std::move(p));
  }
  if (boxes.empty()) boxes.emplace_back(std::vector<unsigned>(n, 0), std::vector<unsigned>(n, 0));

  std::vector<Term> corners;
  corners.reserve(boxes.size());
  for (const auto& [l, p] : boxes) corners.emplace_back(std::span<const unsigned>(p));
  return {reconstruct_from_corners(ring, corners), iterations};
}

OrderIdeal univariate_order_ideal(const Ring& ring, unsigned d) {
  std::vector<Term> terms;
  for (unsigned e = 0; e <= d; ++e) {
    std::vector<unsigned> a(ring.nvars(), 0);
    a[0] = e;
    terms.emplace_back(std::span<const unsigned>(a));
  }
  return OrderIdeal(ring, std::move(terms));
}

std::vector<Point> sample_points(const Ring& ring, std::size_t nu, Rng& rng) {
  const std::uint64_t p = ring.field().modulus();
  const std::size_t n = ring.nvars();
  std::uint64_t space = 1;
  bool huge = false;
  for (std::size_t i = 0; i < n && !huge; ++i) {
    if (space > (std::uint64_t{1} << 40) / p) huge = true;
    space *= p;
  }
  if (!huge && nu > space) {
    throw TooManyPoints(std::to_string(nu) + " points requested from a space of " + std::to_string(space));
  }
  auto decode = [&](std::uint64_t code) {
    Point x(n);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = Fp{static_cast<std::uint32_t>(code % p)};
      code /= p;
    }
    return x;
  };
  std::vector<Point> out;
  out.reserve(nu);
  if (!huge && nu * 2 > space) {
    std::vector<std::uint64_t> codes(space);
    for (std::uint64_t i = 0; i < space; ++i) codes[i] = i;
    for (std::size_t i = 0; i < nu; ++i) {
      std::swap(codes[i], codes[uniform(rng, i, space - 1)]);
      out.push_back(decode(codes[i]));
    }
    return out;
  }
  std::set<Point, decltype([](const Point& a, const Point& b) {
             return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                                 [](Fp x, Fp y) { return x.v < y.v; });
           })>
      seen;
  while (out.size() < nu) {
    Point x(n);
    for (auto& c : x) c = Fp{static_cast<std::uint32_t>(uniform(rng, 0, p - 1))};
    if (seen.insert(x).second) out.push_back(std::move(x));
  }
  return out;
}

MatrixFp evaluation_matrix(const Ring& ring, const std::vector<Term>& terms, const std::vector<Point>& points) {
  MatrixFp m(points.size(), terms.size());
  for (std::size_t r = 0; r < points.size(); ++r) {
    if (points[r].size() != ring.nvars()) throw DimensionMismatch("point arity does not match the ring");
    for (std::size_t c = 0; c < terms.size(); ++c) m.at(r, c) = eval_term(ring.field(), terms[c], points[r]);
  }
  return m;
}

BorderBasis border_basis_from_points(const Ring& ring, const OrderIdeal& O, const std::vector<Point>& P,
                                     std::size_t* nullity) {
  if (O.size() != P.size()) {
    throw DimensionMismatch("|O| = " + std::to_string(O.size()) + " but |P| = " + std::to_string(P.size()));
  }
  const auto& o_terms = O.terms();
  const auto b_terms = border(ring, O);
  std::vector<Term> columns = o_terms;
  columns.insert(columns.end(), b_terms.begin(), b_terms.end());
  const MatrixFp M = evaluation_matrix(ring, columns, P);

  MatrixFp E = M;
  const auto pivots = rref(ring.field(), E);
  bool full = pivots.size() == o_terms.size();
  for (std::size_t i = 0; full && i < pivots.size(); ++i) full = pivots[i] == i;
  if (!full) throw RankDeficient("evaluation matrix of the order ideal is singular on the point set");

  const auto kernel = nullspace(ring.field(), M);
  if (nullity != nullptr) *nullity = kernel.size();
  BorderBasis G{O, {}};
  G.generators.reserve(b_terms.size());
  for (std::size_t k = 0; k < b_terms.size(); ++k) {
    const auto& v = kernel[k];
    std::vector<std::pair<Term, Fp>> terms{{b_terms[k], ring.field().one()}};
    for (std::size_t j = 0; j < o_terms.size(); ++j) {
      if (v[j].v != 0) terms.emplace_back(o_terms[j], v[j]);
    }
    G.generators.push_back({b_terms[k], Polynomial::from_terms(ring, std::move(terms))});
  }
  return G;
}

std::vector<Polynomial> backward_transform(const Ring& ring, const std::vector<Polynomial>& G, std::size_t r,
                                           unsigned d_A, std::size_t t_A, Rng& rng) {
  std::vector<Polynomial> F;
  F.reserve(r);
  while (F.size() < r) {
    Polynomial row;
    for (const auto& g : G) row = add(ring, row, mul(ring, random_polynomial(ring, d_A, t_A, rng), g));
    if (!row.is_zero()) F.push_back(std::move(row));
  }
  return F;
}

const char* to_string(Equality e) {
  switch (e) {
    case Equality::Equal:
      return "equal";
    case Equality::Different:
      return "different";
    case Equality::Undetermined:
      return "undetermined";
  }
  return "?";
}

Equality verify_ideal_equality(const Ring& ring, const std::vector<Polynomial>& F, const BorderBasis& G,
                               std::optional<unsigned> degree_cap) {
  BorderBasis H;
  try {
    SolveConfig config;
    config.degree_cap = degree_cap;
    H = compute_border_basis(ring, F, config).basis;
  } catch (const DegreeBudgetExceeded&) {
    return Equality::Undetermined;
  }
  for (const auto& h : H.generators) {
    if (!border_normal_form(ring, G, h.poly).is_zero()) return Equality::Different;
  }
  for (const auto& g : G.generators) {
    if (!border_normal_form(ring, H, g.poly).is_zero()) return Equality::Different;
  }
  return Equality::Equal;
}

Instance generate_instance(const Ring& ring, const InstanceParams& params, std::uint64_t seed) {
  if (params.max_degree < 1) throw ConfigError("generator degree must be at least 1");
  Rng rng(seed);
  Instance inst;
  inst.seed = seed;
  const std::size_t n = ring.nvars();
  const unsigned cap = params.max_degree - 1;
  const std::size_t rows = params.rows == 0 ? n + 1 : params.rows;
  if (!params.degree_caps.empty() && params.degree_caps.size() != n) {
    throw InvalidArity("expected " + std::to_string(n) + " degree caps, got " +
                       std::to_string(params.degree_caps.size()));
  }
  while (true) {
    OrderIdeal O;
    if (!params.degree_caps.empty()) {
      O = n == 1 ? univariate_order_ideal(ring, static_cast<unsigned>(uniform(rng, 0, params.degree_caps[0])))
                 : sample_order_ideal(ring, params.degree_caps, rng).ideal;
    } else if (n == 1) {
      O = univariate_order_ideal(ring, static_cast<unsigned>(uniform(rng, 0, cap)));
    } else {
      const auto sampled = sample_order_ideal(ring, std::vector<unsigned>(n, cap), rng).ideal;
      std::vector<Term> kept;
      for (const auto& t : sampled.terms()) {
        if (t.degree() <= cap) kept.push_back(t);
      }
      O = OrderIdeal(ring, std::move(kept));
    }
    for (int attempt = 0; attempt < 50; ++attempt) {
      auto P = sample_points(ring, O.size(), rng);
      try {
        inst.basis = border_basis_from_points(ring, O, P);
      } catch (const RankDeficient&) {
        ++inst.rank_deficient;
        continue;
      }
      inst.order_ideal = O;
      inst.points = std::move(P);
      inst.F = backward_transform(ring, inst.basis.polynomials(), rows, params.transform_degree,
                                  params.transform_terms, rng);
      return inst;
    }
  }
}

}  // namespace borderforge
