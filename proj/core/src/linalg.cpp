#include "borderforge/linalg.hpp"

#include <algorithm>

#include "borderforge/errors.hpp"

namespace borderforge {

Elimination parse_elimination(const std::string& name) {
  if (name == "fge") return Elimination::Fge;
  if (name == "naive") return Elimination::Naive;
  throw ConfigError("unknown elimination '" + name + "' (expected fge or naive)");
}

std::string to_string(Elimination e) { return e == Elimination::Fge ? "fge" : "naive"; }


namespace {

// out = work[from..] - c * tail(r), where tail skips r's leading monomial.
void subtract_tail(const PrimeField& F, const std::vector<Monomial>& work, std::size_t from, Fp c,
                   const Polynomial& r, std::vector<Monomial>& out) {
  out.clear();
  const Fp nc = F.neg(c);
  const auto& b = r.terms();
  std::size_t i = from, j = 1;
  while (i < work.size() && j < b.size()) {
    if (work[i].key > b[j].key) {
      out.push_back(work[i++]);
    } else if (work[i].key < b[j].key) {
      out.push_back({b[j].key, b[j].term, F.mul(nc, b[j].coeff)});
      ++j;
    } else {
      const Fp v = F.add(work[i].coeff, F.mul(nc, b[j].coeff));
      if (v.v != 0) out.push_back({work[i].key, work[i].term, v});
      ++i;
      ++j;
    }
  }
  for (; i < work.size(); ++i) out.push_back(work[i]);
  for (; j < b.size(); ++j) out.push_back({b[j].key, b[j].term, F.mul(nc, b[j].coeff)});
}

}  // namespace

const ReducerSet::Entry* ReducerSet::lookup(std::uint64_t key) const {
  auto it = index_.find(key);
  return it == index_.end() ? nullptr : &entries_[it->second];
}

std::size_t ReducerSet::column(const Monomial& m) {
  auto [it, fresh] = columns_.try_emplace(m.key, column_terms_.size());
  if (fresh) column_terms_.push_back({m.key, m.term, Fp{1}});
  return it->second;
}

void ReducerSet::densify(Entry& e) {
  for (const auto& m : e.poly) column(m);
  e.dense.assign(column_terms_.size(), Fp{0});
  for (const auto& m : e.poly) e.dense[columns_.at(m.key)] = m.coeff;
  e.pivot = columns_.at(e.poly.leading().key);
}

void ReducerSet::rebuild_order() {
  order_.resize(entries_.size());
  for (std::size_t s = 0; s < entries_.size(); ++s) order_[s] = s;
  std::sort(order_.begin(), order_.end(), [&](std::size_t a, std::size_t b) {
    return entries_[a].poly.leading().key > entries_[b].poly.leading().key;
  });
}

Polynomial ReducerSet::reduce_dense(const Polynomial& f, std::vector<std::uint64_t>* used) {
  const PrimeField& F = ring_->field();
  for (const auto& m : f) column(m);
  std::vector<Fp> row(column_terms_.size(), Fp{0});
  for (const auto& m : f) row[columns_.at(m.key)] = m.coeff;
  for (const std::size_t slot : order_) {
    const Entry& e = entries_[slot];
    const Fp c = row[e.pivot];
    if (c.v == 0) continue;
    if (used != nullptr) used->push_back(e.poly.leading().key);
    stats_.ops += e.dense.size();
    ++stats_.steps;
    for (std::size_t j = 0; j < e.dense.size(); ++j) row[j] = F.sub_mul(row[j], c, e.dense[j]);
  }
  std::vector<Monomial> out;
  for (std::size_t j = 0; j < row.size(); ++j) {
    if (row[j].v != 0) out.push_back({column_terms_[j].key, column_terms_[j].term, row[j]});
  }
  std::sort(out.begin(), out.end(), [](const Monomial& a, const Monomial& b) { return a.key > b.key; });
  return Polynomial::from_sorted(std::move(out));
}

Polynomial ReducerSet::reduce(const Polynomial& f, std::vector<std::uint64_t>* used) {
  if (mode_ == Elimination::Naive) return reduce_dense(f, used);
  const PrimeField& F = ring_->field();
  std::vector<Monomial> done;
  std::vector<Monomial>& work = work_;
  std::vector<Monomial>& next = next_;
  work.assign(f.terms().begin(), f.terms().end());
  std::size_t i = 0;
  while (i < work.size()) {
    const Entry* e = lookup(work[i].key);
    if (e == nullptr) {
      done.push_back(work[i++]);
      continue;
    }
    if (used != nullptr) used->push_back(work[i].key);
    stats_.ops += e->poly.size();
    ++stats_.steps;
    subtract_tail(F, work, i + 1, work[i].coeff, e->poly, next);
    work.swap(next);
    i = 0;
  }
  return Polynomial::from_sorted(std::move(done));
}

bool ReducerSet::insert(const Polynomial& f, bool auxiliary) {
  if (f.is_zero()) {
    ++stats_.zero_reductions;
    return false;
  }
  const std::uint64_t key = f.leading().key;
  if (index_.contains(key)) {
    throw DuplicateLeadingTerm("leading term " + format_term(f.lt()) + " is already a reducer key");
  }
  index_.emplace(key, entries_.size());
  entries_.push_back({make_monic(*ring_, f), auxiliary, 0, {}});
  if (mode_ == Elimination::Naive) {
    densify(entries_.back());
    const std::size_t slot = entries_.size() - 1;
    auto pos = std::find_if(order_.begin(), order_.end(),
                            [&](std::size_t s) { return entries_[s].poly.leading().key < key; });
    order_.insert(pos, slot);
  }
  if (!auxiliary) ++basis_count_;
  ++stats_.insertions;
  return true;
}

const Polynomial* ReducerSet::find(std::uint64_t key) const {
  auto it = index_.find(key);
  return it == index_.end() ? nullptr : &entries_[it->second].poly;
}

bool ReducerSet::is_auxiliary(std::uint64_t key) const {
  auto it = index_.find(key);
  return it != index_.end() && entries_[it->second].auxiliary;
}

std::vector<const Polynomial*> ReducerSet::basis() const {
  std::vector<const Polynomial*> out;
  out.reserve(basis_count_);
  for (auto it = index_.rbegin(); it != index_.rend(); ++it) {
    const Entry& e = entries_[it->second];
    if (!e.auxiliary) out.push_back(&e.poly);
  }
  return out;
}

void ReducerSet::clear_auxiliary() {
  if (auxiliary_size() == 0) return;
  std::erase_if(entries_, [](const Entry& e) { return e.auxiliary; });
  index_.clear();
  for (std::size_t s = 0; s < entries_.size(); ++s) index_.emplace(entries_[s].poly.leading().key, s);
  if (mode_ == Elimination::Naive) rebuild_order();
}

Polynomial reduce_full_naive(const Ring& ring, const Polynomial& f, std::span<const Polynomial> reducers,
                             std::mt19937_64* rng) {
  Polynomial work = f;
  while (true) {
    std::vector<std::pair<const Polynomial*, Fp>> applicable;
    for (const auto& m : work) {
      for (const auto& r : reducers) {
        if (!r.is_zero() && r.leading().key == m.key) {
          applicable.emplace_back(&r, m.coeff);
          break;
        }
      }
      if (!applicable.empty() && rng == nullptr) break;
    }
    if (applicable.empty()) return work;
    std::size_t pick = 0;
    if (rng != nullptr) pick = std::uniform_int_distribution<std::size_t>(0, applicable.size() - 1)(*rng);
    const auto [r, coeff] = applicable[pick];
    const Fp c = ring.field().mul(coeff, ring.field().inv(r->lc()));
    work = axpy(ring, work, c, ring.one(), *r);
  }
}

std::vector<std::size_t> rref(const PrimeField& F, MatrixFp& m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t sel = row;
    while (sel < m.rows() && m.at(sel, col).v == 0) ++sel;
    if (sel == m.rows()) continue;
    if (sel != row) {
      for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m.at(sel, c), m.at(row, c));
    }
    const Fp inv = F.inv(m.at(row, col));
    for (std::size_t c = col; c < m.cols(); ++c) m.at(row, c) = F.mul(m.at(row, c), inv);
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || m.at(r, col).v == 0) continue;
      const Fp factor = m.at(r, col);
      for (std::size_t c = col; c < m.cols(); ++c) m.at(r, c) = F.sub_mul(m.at(r, c), factor, m.at(row, c));
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

std::size_t rank(const PrimeField& F, MatrixFp m) { return rref(F, m).size(); }

std::vector<std::vector<Fp>> nullspace(const PrimeField& F, const MatrixFp& m) {
  MatrixFp r = m;
  const auto pivots = rref(F, r);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<std::vector<Fp>> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<Fp> v(m.cols(), F.zero());
    v[free] = F.one();
    for (std::size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = F.neg(r.at(k, free));
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace borderforge
