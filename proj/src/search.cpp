#include "gqtk/search.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <numeric>
#include <thread>

#include "gqtk/incidence.hpp"
#include "gqtk/iso.hpp"

namespace gqtk {

namespace {

using Matrix = std::vector<std::vector<bool>>;

struct Lattice {
  std::size_t n = 0;
  Matrix leq;
  std::vector<std::size_t> join;  // n*n
};

// Least upper bounds, or nullopt when some pair lacks one.
std::optional<std::vector<std::size_t>> joins_of(const Matrix& leq) {
  const std::size_t n = leq.size();
  std::vector<std::size_t> join(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      std::optional<std::size_t> best;
      for (std::size_t c = 0; c < n; ++c) {
        if (!leq[a][c] || !leq[b][c]) continue;
        bool least = true;
        for (std::size_t d = 0; d < n && least; ++d)
          if (leq[a][d] && leq[b][d] && !leq[c][d]) least = false;
        if (least) best = c;
      }
      if (!best) return std::nullopt;
      join[a * n + b] = *best;
    }
  return join;
}

std::string canonical_form(const Matrix& leq) {
  const std::size_t n = leq.size();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::string best;
  // Bottom and top stay in place; inner elements are permuted.
  do {
    std::string s;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) s += leq[perm[a]][perm[b]] ? '1' : '0';
    if (best.empty() || s < best) best = s;
  } while (n > 2 && std::next_permutation(perm.begin() + 1, perm.end() - 1));
  return best;
}

std::vector<std::vector<std::size_t>> lattice_involutions(const Matrix& leq) {
  const std::size_t n = leq.size();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::vector<std::size_t>> out;
  do {
    bool ok = true;
    for (std::size_t a = 0; a < n && ok; ++a) {
      if (perm[perm[a]] != a) ok = false;
      for (std::size_t b = 0; b < n && ok; ++b)
        if (leq[a][b] != leq[perm[a]][perm[b]]) ok = false;
    }
    if (ok) out.push_back(perm);
  } while (n > 2 && std::next_permutation(perm.begin() + 1, perm.end() - 1));
  return out;
}

using Key = std::vector<long>;

Key invariant_key(const FiniteQuantale& q) {
  const std::size_t n = q.size();
  std::vector<Key> rows;
  for (Index a = 0; a < n; ++a) {
    long down = 0, up = 0, fixes = 0;
    for (Index b = 0; b < n; ++b) {
      down += q.leq(b, a);
      up += q.leq(a, b);
      fixes += q.mul(a, b) == a;
    }
    rows.push_back({down, up, fixes, q.mul(a, a) == a, q.star(a) == a, q.leq(a, q.unit()), a == q.unit()});
  }
  std::sort(rows.begin(), rows.end());
  Key key{static_cast<long>(n)};
  for (const auto& r : rows) key.insert(key.end(), r.begin(), r.end());
  return key;
}

// All valid quantales over one lattice with a fixed involution and unit, in discovery order.
class ProductSearch {
 public:
  ProductSearch(const Lattice& l, const std::vector<std::size_t>& inv, std::size_t unit, std::atomic<std::size_t>& spent,
                std::size_t budget)
      : l_(l), inv_(inv), unit_(unit), spent_(spent), budget_(budget) {
    const std::size_t n = l.n;
    for (std::size_t j = 0; j < n; ++j) {
      std::size_t below = 0;  // join of elements strictly below j
      for (std::size_t x = 0; x < n; ++x)
        if (x != j && l.leq[x][j]) below = l.join[below * n + x];
      if (j != 0 && below != j) irr_.push_back(j);
    }
    pos_.assign(n, kNo);
    for (std::size_t i = 0; i < irr_.size(); ++i) pos_[irr_[i]] = i;
    f_.assign(irr_.size() * irr_.size(), kNo);
  }

  bool run(std::vector<FiniteQuantale>& out) {
    const std::size_t k = irr_.size();
    if (pos_[unit_] != kNo)
      for (std::size_t j = 0; j < k; ++j)
        if (!force(pos_[unit_], j, irr_[j]) || !force(j, pos_[unit_], irr_[j])) return true;
    return extend(0, out);
  }

 private:
  static constexpr std::size_t kNo = static_cast<std::size_t>(-1);

  bool leq(std::size_t a, std::size_t b) const { return l_.leq[a][b]; }

  // Assigns f(a,b) = v if consistent with monotonicity and (ab)* = b*a*.
  bool force(std::size_t a, std::size_t b, std::size_t v) {
    const std::size_t k = irr_.size();
    std::size_t& slot = f_[a * k + b];
    if (slot != kNo) return slot == v;
    for (std::size_t c = 0; c < k; ++c) {
      const std::size_t left = f_[c * k + b], right = f_[a * k + c];
      if (left != kNo && ((leq(irr_[c], irr_[a]) && !leq(left, v)) || (leq(irr_[a], irr_[c]) && !leq(v, left))))
        return false;
      if (right != kNo && ((leq(irr_[c], irr_[b]) && !leq(right, v)) || (leq(irr_[b], irr_[c]) && !leq(v, right))))
        return false;
    }
    slot = v;
    trail_.push_back(a * k + b);
    return force(pos_[inv_[irr_[b]]], pos_[inv_[irr_[a]]], inv_[v]);
  }

  void undo(std::size_t mark) {
    while (trail_.size() > mark) {
      f_[trail_.back()] = kNo;
      trail_.pop_back();
    }
  }

  bool extend(std::size_t cell, std::vector<FiniteQuantale>& out) {
    const std::size_t k = irr_.size();
    while (cell < k * k && f_[cell] != kNo) ++cell;
    if (cell == k * k) return emit(out);
    for (std::size_t v = 0; v < l_.n; ++v) {
      const std::size_t mark = trail_.size();
      if (force(cell / k, cell % k, v) && !extend(cell + 1, out)) return false;
      undo(mark);
    }
    return true;
  }

  bool emit(std::vector<FiniteQuantale>& out) {
    if (spent_.fetch_add(1) >= budget_) return false;
    const std::size_t n = l_.n, k = irr_.size();
    std::vector<Index> product(n * n, 0);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        std::size_t acc = 0;
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = 0; j < k; ++j)
            if (leq(irr_[i], a) && leq(irr_[j], b)) acc = l_.join[acc * n + f_[i * k + j]];
        product[a * n + b] = static_cast<Index>(acc);
      }
    for (std::size_t a = 0; a < n; ++a)
      if (product[a * n + unit_] != a || product[unit_ * n + a] != a) return true;
    std::vector<Index> inv(inv_.begin(), inv_.end());
    FiniteQuantale q = FiniteQuantale::from_tables(n, l_.leq, std::move(product), std::move(inv), static_cast<Index>(unit_));
    if (check_quantale_axioms(q).ok()) out.push_back(std::move(q));
    return true;
  }

  const Lattice& l_;
  const std::vector<std::size_t>& inv_;
  std::size_t unit_;
  std::atomic<std::size_t>& spent_;
  std::size_t budget_;
  std::vector<std::size_t> irr_, pos_, f_, trail_;
};

struct Task {
  const Lattice* lattice;
  std::vector<std::size_t> involution;
  std::size_t unit;
};

}  // namespace

std::string ModelProfile::key() const {
  auto b = [](bool v) { return v ? "1" : "0"; };
  auto o = [](const std::optional<bool>& v) { return v ? (*v ? "1" : "0") : "-"; };
  return std::string("SG") + b(sg) + " SGF" + b(sgf1) + b(sgf2) + b(sgf3) + " SPQ" + o(spq1) + o(spq2) + " D" +
         b(distributive) + " IQF" + b(inverse_quantal_frame);
}

std::vector<Matrix> enumerate_lattices(std::size_t n) {
  if (n == 0) return {};
  if (n == 1) return {Matrix{{true}}};
  std::vector<std::pair<std::size_t, std::size_t>> inner;
  for (std::size_t a = 1; a + 1 < n; ++a)
    for (std::size_t b = a + 1; b + 1 < n; ++b) inner.emplace_back(a, b);
  std::vector<std::string> seen;
  std::vector<Matrix> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << inner.size()); ++mask) {
    Matrix leq(n, std::vector<bool>(n, false));
    for (std::size_t a = 0; a < n; ++a) {
      leq[a][a] = true;
      leq[0][a] = true;
      leq[a][n - 1] = true;
    }
    for (std::size_t i = 0; i < inner.size(); ++i)
      if (mask & (std::size_t{1} << i)) leq[inner[i].first][inner[i].second] = true;
    bool transitive = true;
    for (std::size_t a = 0; a < n && transitive; ++a)
      for (std::size_t b = 0; b < n && transitive; ++b)
        for (std::size_t c = 0; c < n && transitive; ++c)
          if (leq[a][b] && leq[b][c] && !leq[a][c]) transitive = false;
    if (!transitive || !joins_of(leq)) continue;
    std::string form = canonical_form(leq);
    if (std::find(seen.begin(), seen.end(), form) != seen.end()) continue;
    seen.push_back(std::move(form));
    out.push_back(std::move(leq));
  }
  return out;
}

ModelProfile classify(const FiniteQuantale& q) {
  ModelProfile p;
  p.sg = check_sg(q).holds;
  const SgfReport sgf = check_sgf(q);
  p.sgf1 = sgf.sgf1.holds;
  p.sgf2 = sgf.sgf2.holds;
  p.sgf3 = sgf.sgf3.holds;
  if (sgf.all()) {
    try {
      const SpatialReport sp = IncidenceAnalysis(q).check_spatial();
      p.spq1 = sp.spq1.holds;
      p.spq2 = sp.spq2.holds;
    } catch (const Error&) {
      p.spq1 = p.spq2 = false;
    }
  }
  p.distributive = is_distributive_lattice(q).holds;
  p.inverse_quantal_frame = check_inverse_quantal_frame(q).holds();
  return p;
}

Verdict check_sg_consequences(const FiniteQuantale& q) {
  if (Verdict v = check_qe_frame(q); !v.holds) return Verdict::fail("Q_e is not a frame: " + v.witness);
  const PartialUnitSet pu = partial_units(q);
  for (Index f : pu.functional)
    for (Index g : pu.functional) {
      if (f == g || !q.leq(f, g)) continue;
      if (q.mul(f, q.star(f)) == q.mul(g, q.star(g)))
        return Verdict::fail("functional " + element_name(q, f) + " < " + element_name(q, g) + " with equal ff*");
    }
  if (Verdict v = check_inverse_monoid(q); !v.holds) return Verdict::fail("I(Q) is not an inverse monoid: " + v.witness);
  return Verdict::pass();
}

SearchResult search_models(const SearchOptions& opts) {
  if (opts.max_size > opts.cap)
    throw InputError("SizeAboveCap", "max size " + std::to_string(opts.max_size) + " exceeds the cap " +
                                         std::to_string(opts.cap));
  SearchResult res;
  std::vector<std::vector<Lattice>> lattices(opts.max_size + 1);
  std::vector<Task> tasks;
  for (std::size_t n = 1; n <= opts.max_size; ++n) {
    for (Matrix& leq : enumerate_lattices(n)) lattices[n].push_back({n, std::move(leq), {}});
    for (Lattice& l : lattices[n]) l.join = *joins_of(l.leq);
    res.lattices_by_size[n] = lattices[n].size();
  }
  for (std::size_t n = 1; n <= opts.max_size; ++n)
    for (const Lattice& l : lattices[n])
      for (auto& inv : lattice_involutions(l.leq))
        for (std::size_t e = 0; e < n; ++e)
          if (inv[e] == e) tasks.push_back({&l, inv, e});

  std::atomic<std::size_t> spent{0};
  std::atomic<std::size_t> next{0};
  std::atomic<bool> exhausted{false};
  std::vector<std::vector<FiniteQuantale>> found(tasks.size());
  auto worker = [&]() {
    for (std::size_t t = next++; t < tasks.size(); t = next++) {
      if (exhausted) return;
      ProductSearch ps(*tasks[t].lattice, tasks[t].involution, tasks[t].unit, spent, opts.budget);
      if (!ps.run(found[t])) exhausted = true;
    }
  };
  const unsigned threads = std::max(1u, opts.threads);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  res.candidates = std::min(spent.load(), opts.budget);
  res.complete = !exhausted;

  // Deduplicate sequentially in task order so the result does not depend on scheduling.
  std::map<Key, std::vector<std::size_t>> buckets;
  for (auto& batch : found)
    for (FiniteQuantale& q : batch) {
      auto& bucket = buckets[invariant_key(q)];
      bool fresh = true;
      for (std::size_t i : bucket)
        if (std::holds_alternative<QuantaleIso>(quantale_isomorphic(res.models[i].quantale, q))) {
          fresh = false;
          break;
        }
      if (!fresh) continue;
      bucket.push_back(res.models.size());
      ModelProfile prof = classify(q);
      ++res.models_by_size[q.size()];
      res.models.push_back({std::move(q), prof});
    }
  for (std::size_t n = 1; n <= opts.max_size; ++n) res.models_by_size.emplace(n, 0);
  return res;
}

}  // namespace gqtk
