#include "gqtk/quantale.hpp"

#include <algorithm>
#include <array>
#include <numeric>

namespace gqtk {

namespace {

std::string idx(Index a) { return "#" + std::to_string(a); }

// Elements other than the bottom that are not the join of the elements strictly below.
std::vector<Index> join_irreducibles(const FiniteQuantale& q) {
  std::vector<Index> out;
  for (Index a = 0; a < q.size(); ++a) {
    if (a == q.bottom()) continue;
    Index below = q.bottom();
    for (Index b = 0; b < q.size(); ++b)
      if (b != a && q.leq(b, a)) below = q.join(below, b);
    if (below != a) out.push_back(a);
  }
  return out;
}

}  // namespace

std::string element_name(const FiniteQuantale& q, Index a) {
  (void)q;
  return idx(a);
}

FiniteQuantale FiniteQuantale::from_tables(std::size_t n, const std::vector<std::vector<bool>>& leq,
                                           std::vector<Index> product, std::vector<Index> involution, Index unit,
                                           std::vector<Mask> carriers) {
  if (n == 0) throw InputError("Shape", "a quantale needs at least one element");
  if (leq.size() != n || product.size() != n * n || involution.size() != n)
    throw InputError("Shape", "table sizes do not match n = " + std::to_string(n));
  for (const auto& row : leq)
    if (row.size() != n) throw InputError("Shape", "order matrix is not square");
  for (Index v : product)
    if (v >= n) throw InputError("Shape", "product entry out of range");
  for (Index v : involution)
    if (v >= n) throw InputError("Shape", "involution entry out of range");
  if (unit >= n) throw InputError("Shape", "unit out of range");
  if (!carriers.empty() && carriers.size() != n) throw InputError("Shape", "carrier list has wrong length");

  std::vector<Violation> bad;
  for (std::size_t a = 0; a < n; ++a) {
    if (!leq[a][a]) bad.push_back({"NotLattice", "not reflexive at " + idx(static_cast<Index>(a))});
    for (std::size_t b = 0; b < n; ++b) {
      if (a != b && leq[a][b] && leq[b][a])
        bad.push_back({"NotLattice", "antisymmetry fails for " + idx(static_cast<Index>(a)) + ", " + idx(static_cast<Index>(b))});
      if (!leq[a][b]) continue;
      for (std::size_t c = 0; c < n; ++c)
        if (leq[b][c] && !leq[a][c]) {
          bad.push_back({"NotLattice", "transitivity fails at " + idx(static_cast<Index>(a)) + " <= " +
                                           idx(static_cast<Index>(b)) + " <= " + idx(static_cast<Index>(c))});
          break;
        }
    }
    if (bad.size() > 8) break;
  }
  if (!bad.empty()) throw ValidationError("NotLattice", std::move(bad));

  FiniteQuantale q;
  q.n_ = n;
  std::vector<std::size_t> rank(n, 0);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t c = 0; c < n; ++c)
      if (leq[c][a]) ++rank[a];
  q.order_.resize(n);
  std::iota(q.order_.begin(), q.order_.end(), Index{0});
  std::stable_sort(q.order_.begin(), q.order_.end(), [&](Index a, Index b) { return rank[a] < rank[b]; });
  q.pos_.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) q.pos_[q.order_[i]] = static_cast<Index>(i);
  q.up_.assign(n, Bits(n));
  q.down_.assign(n, Bits(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t c = 0; c < n; ++c) {
      if (leq[a][c]) q.up_[a].set(q.pos_[c]);
      if (leq[c][a]) q.down_[a].set(n - 1 - q.pos_[c]);
    }

  q.bottom_ = q.order_.front();
  q.top_ = q.order_.back();
  if (q.up_[q.bottom_].count() != n) throw ValidationError("NotLattice", {{"NotLattice", "no least element"}});
  if (q.down_[q.top_].count() != n) throw ValidationError("NotLattice", {{"NotLattice", "no greatest element"}});

  q.join_.assign(n * n, 0);
  q.meet_.assign(n * n, 0);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a; b < n; ++b) {
      Bits ub = q.up_[a] & q.up_[b];
      const Index j = q.order_[ub.find_first()];
      if (q.up_[j] != ub)
        throw ValidationError("NotLattice", {{"NotLattice", "no least upper bound for " + idx(static_cast<Index>(a)) + ", " +
                                                                idx(static_cast<Index>(b))}});
      Bits lb = q.down_[a] & q.down_[b];
      const Index m = q.order_[n - 1 - lb.find_first()];
      if (q.down_[m] != lb)
        throw ValidationError("NotLattice", {{"NotLattice", "no greatest lower bound for " + idx(static_cast<Index>(a)) +
                                                                ", " + idx(static_cast<Index>(b))}});
      q.join_[a * n + b] = q.join_[b * n + a] = j;
      q.meet_[a * n + b] = q.meet_[b * n + a] = m;
    }
  }
  q.product_ = std::move(product);
  q.involution_ = std::move(involution);
  q.unit_ = unit;
  q.carriers_ = std::move(carriers);
  for (std::size_t a = 0; a < q.carriers_.size(); ++a) q.carrier_index_.emplace(q.carriers_[a], static_cast<Index>(a));
  return q;
}

Index FiniteQuantale::join_of(std::span<const Index> xs) const {
  Index acc = bottom_;
  for (Index x : xs) acc = join(acc, x);
  return acc;
}

Index FiniteQuantale::meet_of(std::span<const Index> xs) const {
  Index acc = top_;
  for (Index x : xs) acc = meet(acc, x);
  return acc;
}

std::optional<Index> FiniteQuantale::find(Mask carrier) const {
  auto it = carrier_index_.find(carrier);
  if (it == carrier_index_.end()) return std::nullopt;
  return it->second;
}

QuantaleData FiniteQuantale::to_data() const {
  QuantaleData d;
  d.n = n_;
  for (Index a = 0; a < n_; ++a)
    for (Index b = 0; b < n_; ++b)
      if (a != b && leq(a, b)) d.leq.emplace_back(a, b);
  d.product.assign(n_, std::vector<std::size_t>(n_));
  for (Index a = 0; a < n_; ++a)
    for (Index b = 0; b < n_; ++b) d.product[a][b] = mul(a, b);
  d.involution.assign(involution_.begin(), involution_.end());
  d.unit = unit_;
  return d;
}

bool QuantaleReport::ok() const { return first_failure() == nullptr; }

const AxiomCheck* QuantaleReport::first_failure() const {
  for (const auto& c : checks)
    if (!c.verdict.holds) return &c;
  return nullptr;
}

Verdict distributive_binary(const FiniteQuantale& q, Side side) {
  const Index n = static_cast<Index>(q.size());
  auto m = [&](Index a, Index b) { return side == Side::Left ? q.mul(a, b) : q.mul(b, a); };
  for (Index a = 0; a < n; ++a)
    if (m(a, q.bottom()) != q.bottom())
      return Verdict::fail("zero law fails at " + idx(a));
  // x -> m(a, x) preserves b ∨ c for all b, c once it does so for join-irreducible c:
  // peel c into join-irreducibles one at a time and use the zero law for the empty join.
  const std::vector<Index> irreducibles = join_irreducibles(q);
  for (Index a = 0; a < n; ++a)
    for (Index b = 0; b < n; ++b)
      for (Index c : irreducibles)
        if (m(a, q.join(b, c)) != q.join(m(a, b), m(a, c)))
          return Verdict::fail("a=" + idx(a) + " b=" + idx(b) + " c=" + idx(c));
  return Verdict::pass();
}

Verdict distributive_exhaustive(const FiniteQuantale& q, Side side) {
  const std::size_t n = q.size();
  if (n > 20) throw Error("TooLarge", "exhaustive distributivity is limited to 20 elements");
  auto m = [&](Index a, Index b) { return side == Side::Left ? q.mul(a, b) : q.mul(b, a); };
  for (Index a = 0; a < n; ++a) {
    for (std::uint32_t subset = 0; subset < (1u << n); ++subset) {
      Index joined = q.bottom(), images = q.bottom();
      for (Index b = 0; b < n; ++b)
        if (subset & (1u << b)) {
          joined = q.join(joined, b);
          images = q.join(images, m(a, b));
        }
      if (m(a, joined) != images) return Verdict::fail("a=" + idx(a) + " subset=" + std::to_string(subset));
    }
  }
  return Verdict::pass();
}

QuantaleReport check_quantale_axioms(const FiniteQuantale& q, const CheckOptions& opts) {
  const Index n = static_cast<Index>(q.size());
  QuantaleReport rep;

  std::array<Verdict, 2> dist;
  for (Side side : {Side::Left, Side::Right}) {
    Verdict v = distributive_binary(q, side);
    if (opts.verify_oracles && n <= 20 && v.holds != distributive_exhaustive(q, side).holds)
      throw Error("OracleMismatch", "binary and exhaustive distributivity checks disagree");
    dist[side == Side::Left ? 0 : 1] = v;
  }

  // With both distributive laws every element is a join of join-irreducibles and
  // the product spreads over those joins, so associativity on them suffices.
  std::vector<Index> gens;
  if (dist[0].holds && dist[1].holds && !opts.verify_oracles) {
    gens = join_irreducibles(q);
  } else {
    gens.resize(n);
    std::iota(gens.begin(), gens.end(), Index{0});
  }
  Verdict assoc;
  for (Index a : gens) {
    for (Index b : gens) {
      for (Index c : gens)
        if (q.mul(q.mul(a, b), c) != q.mul(a, q.mul(b, c))) {
          assoc = Verdict::fail("(ab)c != a(bc) at a=" + idx(a) + " b=" + idx(b) + " c=" + idx(c));
          break;
        }
      if (!assoc.holds) break;
    }
    if (!assoc.holds) break;
  }
  rep.checks.push_back({"Associativity", assoc});

  rep.checks.push_back({"D1", dist[0]});
  rep.checks.push_back({"D2", dist[1]});

  Verdict unit;
  for (Index a = 0; a < n; ++a)
    if (q.mul(q.unit(), a) != a || q.mul(a, q.unit()) != a) {
      unit = Verdict::fail("e·a or a·e differs from a at " + idx(a));
      break;
    }
  rep.checks.push_back({"U", unit});

  Verdict i1, i2, i3;
  for (Index a = 0; a < n; ++a)
    if (q.star(q.star(a)) != a) {
      i1 = Verdict::fail("a** != a at " + idx(a));
      break;
    }
  for (Index a = 0; a < n && i2.holds; ++a)
    for (Index b = 0; b < n; ++b)
      if (q.star(q.mul(a, b)) != q.mul(q.star(b), q.star(a))) {
        i2 = Verdict::fail("(ab)* != b*a* at a=" + idx(a) + " b=" + idx(b));
        break;
      }
  if (q.star(q.bottom()) != q.bottom()) i3 = Verdict::fail("0* != 0");
  for (Index a = 0; a < n && i3.holds; ++a)
    for (Index b = a + 1; b < n; ++b)
      if (q.star(q.join(a, b)) != q.join(q.star(a), q.star(b))) {
        i3 = Verdict::fail("(a∨b)* != a*∨b* at a=" + idx(a) + " b=" + idx(b));
        break;
      }
  rep.checks.push_back({"I1", i1});
  rep.checks.push_back({"I2", i2});
  rep.checks.push_back({"I3", i3});
  return rep;
}

FiniteQuantale quantale_from_data(const QuantaleData& data) {
  const std::size_t n = data.n;
  if (data.product.size() != n || data.involution.size() != n)
    throw InputError("Shape", "product/involution sizes do not match n");
  std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
  for (std::size_t a = 0; a < n; ++a) leq[a][a] = true;
  for (auto [a, b] : data.leq) {
    if (a >= n || b >= n) throw InputError("Shape", "order pair out of range");
    leq[a][b] = true;
  }
  std::vector<Index> product;
  product.reserve(n * n);
  for (const auto& row : data.product) {
    if (row.size() != n) throw InputError("Shape", "product table is not square");
    for (std::size_t v : row) product.push_back(static_cast<Index>(v));
  }
  std::vector<Index> inv(data.involution.begin(), data.involution.end());
  return FiniteQuantale::from_tables(n, leq, std::move(product), std::move(inv), static_cast<Index>(data.unit));
}

FiniteQuantale validate_quantale(const QuantaleData& data, const CheckOptions& opts) {
  FiniteQuantale q = quantale_from_data(data);
  const QuantaleReport rep = check_quantale_axioms(q, opts);
  if (!rep.ok()) {
    std::vector<Violation> vs;
    for (const auto& c : rep.checks) {
      if (c.verdict.holds) continue;
      std::string code = c.axiom == "Associativity" ? "NotAssociative"
                         : c.axiom == "D1"          ? "DistributivityFail{left}"
                         : c.axiom == "D2"          ? "DistributivityFail{right}"
                         : c.axiom == "U"           ? "UnitFail"
                                                    : "InvolutionFail";
      vs.push_back({code, c.verdict.witness});
    }
    throw ValidationError("InvalidQuantale", std::move(vs));
  }
  return q;
}

FiniteQuantale from_subset_family(const FiniteGroupoid& g, std::vector<Mask> family) {
  std::sort(family.begin(), family.end(), canonical_less);
  family.erase(std::unique(family.begin(), family.end()), family.end());
  std::unordered_map<Mask, Index> index;
  for (std::size_t i = 0; i < family.size(); ++i) index.emplace(family[i], static_cast<Index>(i));
  auto has = [&](Mask m) { return index.count(m) != 0; };

  std::vector<Violation> bad;
  if (!has(0)) bad.push_back({"NotUnionClosed", "empty union {} missing"});
  for (std::size_t i = 0; i < family.size() && bad.size() < 8; ++i)
    for (std::size_t j = i + 1; j < family.size(); ++j)
      if (!has(family[i] | family[j])) {
        bad.push_back({"NotUnionClosed", g.format(family[i]) + " ∪ " + g.format(family[j])});
        break;
      }
  if (!bad.empty()) throw ValidationError("NotUnionClosed", std::move(bad));

  const std::size_t n = family.size();
  if (!has(g.units())) bad.push_back({"NotOperationClosed", "unit E = " + g.format(g.units()) + " missing"});
  std::vector<Index> product(n * n), involution(n);
  for (std::size_t i = 0; i < n && bad.empty(); ++i) {
    const Mask inv = lift_involution(g, family[i]);
    if (!has(inv)) {
      bad.push_back({"NotOperationClosed", "involution of " + g.format(family[i])});
      break;
    }
    involution[i] = index[inv];
    for (std::size_t j = 0; j < n; ++j) {
      const Mask p = lift_product(g, family[i], family[j]);
      auto it = index.find(p);
      if (it == index.end()) {
        bad.push_back({"NotOperationClosed", g.format(family[i]) + " · " + g.format(family[j])});
        break;
      }
      product[i * n + j] = it->second;
    }
  }
  if (!bad.empty()) throw ValidationError("NotOperationClosed", std::move(bad));

  std::vector<std::vector<bool>> leq(n, std::vector<bool>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) leq[i][j] = is_subset(family[i], family[j]);
  return FiniteQuantale::from_tables(n, leq, std::move(product), std::move(involution), index[g.units()],
                                     std::move(family));
}

FiniteQuantale frame_quantale(const FiniteSpace& space) {
  const auto& opens = space.opens();
  const std::size_t n = opens.size();
  std::vector<std::vector<bool>> leq(n, std::vector<bool>(n));
  std::vector<Index> product(n * n), involution(n);
  auto find = [&](Mask m) {
    return static_cast<Index>(std::lower_bound(opens.begin(), opens.end(), m, canonical_less) - opens.begin());
  };
  for (std::size_t i = 0; i < n; ++i) {
    involution[i] = static_cast<Index>(i);
    for (std::size_t j = 0; j < n; ++j) {
      leq[i][j] = is_subset(opens[i], opens[j]);
      product[i * n + j] = find(opens[i] & opens[j]);
    }
  }
  return FiniteQuantale::from_tables(n, leq, std::move(product), std::move(involution), find(space.full()), opens);
}

PartialUnitSet partial_units(const FiniteQuantale& q) {
  PartialUnitSet s;
  const Index e = q.unit();
  for (Index f = 0; f < q.size(); ++f) {
    const bool functional = q.leq(q.mul(q.star(f), f), e);
    if (functional) s.functional.push_back(f);
    if (functional && q.leq(q.mul(f, q.star(f)), e)) s.partial_units.push_back(f);
    if (q.leq(f, e)) s.qe.push_back(f);
  }
  return s;
}

Verdict check_sg(const FiniteQuantale& q) {
  for (Index a = 0; a < q.size(); ++a)
    if (!q.leq(a, q.mul(q.mul(a, q.star(a)), a))) return Verdict::fail("a ≰ aa*a at " + idx(a));
  return Verdict::pass();
}

SgfReport check_sgf(const FiniteQuantale& q) {
  const PartialUnitSet pu = partial_units(q);
  const auto& units = pu.partial_units;
  SgfReport rep;
  for (Index a = 0; a < q.size(); ++a) {
    Index below = q.bottom();
    for (Index f : units)
      if (q.leq(f, a)) below = q.join(below, f);
    if (below != a) {
      rep.sgf1 = Verdict::fail(idx(a) + " is not the join of the partial units below it");
      break;
    }
  }
  for (Index f : units)
    if (q.mul(q.mul(f, q.star(f)), f) != f) {
      rep.sgf2 = Verdict::fail("f != ff*f at " + idx(f));
      break;
    }
  for (Index h : pu.qe) {
    const Index h1 = q.mul(h, q.top());
    for (Index f : units) {
      const Index hf = q.mul(h, f);
      for (Index g : units) {
        if (q.leq(f, q.join(h1, g)) && !q.leq(f, q.join(hf, g))) {
          rep.sgf3 = Verdict::fail("f=" + idx(f) + " g=" + idx(g) + " h=" + idx(h));
          return rep;
        }
      }
    }
  }
  return rep;
}

Verdict check_qe_frame(const FiniteQuantale& q) {
  const auto qe = partial_units(q).qe;
  for (Index h : qe) {
    if (q.star(h) != h) return Verdict::fail("h* != h at " + idx(h));
    for (Index k : qe)
      if (q.mul(h, k) != q.meet(h, k)) return Verdict::fail("hk != h∧k at h=" + idx(h) + " k=" + idx(k));
  }
  return Verdict::pass();
}

Verdict check_inverse_monoid(const FiniteQuantale& q) {
  const PartialUnitSet pu = partial_units(q);
  const auto& units = pu.partial_units;
  std::vector<bool> in_i(q.size(), false), in_qe(q.size(), false);
  for (Index f : units) in_i[f] = true;
  for (Index h : pu.qe) in_qe[h] = true;
  if (!in_i[q.unit()]) return Verdict::fail("e is not a partial unit");
  for (Index f : units) {
    if (!in_i[q.star(f)]) return Verdict::fail("I(Q) not closed under * at " + idx(f));
    for (Index g : units)
      if (!in_i[q.mul(f, g)]) return Verdict::fail("I(Q) not closed under product at " + idx(f) + "," + idx(g));
  }
  for (Index f : units) {
    const Index fs = q.star(f);
    if (q.mul(q.mul(f, fs), f) != f || q.mul(q.mul(fs, f), fs) != fs)
      return Verdict::fail("f* is not an inverse of " + idx(f));
    for (Index g : units)
      if (g != fs && q.mul(q.mul(f, g), f) == f && q.mul(q.mul(g, f), g) == g)
        return Verdict::fail("second inverse " + idx(g) + " of " + idx(f));
    const bool idempotent = q.mul(f, f) == f;
    if (idempotent != in_qe[f]) return Verdict::fail("idempotents differ from Q_e at " + idx(f));
  }
  for (Index h : pu.qe)
    for (Index k : pu.qe)
      if (q.mul(h, k) != q.mul(k, h)) return Verdict::fail("idempotents do not commute: " + idx(h) + "," + idx(k));
  return Verdict::pass();
}

Index conjugate(const FiniteQuantale& q, Index h, Index f) {
  if (h >= q.size() || f >= q.size()) throw Error("ArgumentsOutOfDomain", "index out of range");
  if (!q.leq(h, q.unit())) throw Error("ArgumentsOutOfDomain", idx(h) + " is not below e");
  const Index e = q.unit();
  if (!q.leq(q.mul(q.star(f), f), e) || !q.leq(q.mul(f, q.star(f)), e))
    throw Error("ArgumentsOutOfDomain", idx(f) + " is not a partial unit");
  return q.mul(q.mul(q.star(f), h), f);
}

Verdict is_distributive_lattice(const FiniteQuantale& q) {
  const Index n = static_cast<Index>(q.size());
  for (Index a = 0; a < n; ++a)
    for (Index b = 0; b < n; ++b)
      for (Index c = b + 1; c < n; ++c)
        if (q.meet(a, q.join(b, c)) != q.join(q.meet(a, b), q.meet(a, c)))
          return Verdict::fail("a∧(b∨c) != (a∧b)∨(a∧c) at a=" + idx(a) + " b=" + idx(b) + " c=" + idx(c));
  return Verdict::pass();
}

InverseQuantalFrameReport check_inverse_quantal_frame(const FiniteQuantale& q) {
  InverseQuantalFrameReport rep;
  rep.distributive = is_distributive_lattice(q);
  rep.sgf1 = check_sgf(q).sgf1;
  const auto units = partial_units(q).partial_units;
  std::vector<Index> support(q.size(), q.bottom());
  for (Index a = 0; a < q.size(); ++a)
    for (Index f : units)
      if (q.leq(f, a)) support[a] = q.join(support[a], q.mul(f, q.star(f)));
  for (Index a = 0; a < q.size() && rep.support.holds; ++a) {
    if (!q.leq(support[a], q.mul(a, q.star(a))))
      rep.support = Verdict::fail("s(a) ≰ aa* at " + idx(a));
    else if (!q.leq(a, q.mul(support[a], a)))
      rep.support = Verdict::fail("a ≰ s(a)a at " + idx(a));
    for (Index b = a + 1; b < q.size() && rep.support.holds; ++b)
      if (support[q.join(a, b)] != q.join(support[a], support[b]))
        rep.support = Verdict::fail("s does not preserve a∨b at " + idx(a) + "," + idx(b));
  }
  if (rep.support.holds && support[q.bottom()] != q.bottom()) rep.support = Verdict::fail("s(0) != 0");
  return rep;
}

}  // namespace gqtk
