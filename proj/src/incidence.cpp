#include "gqtk/incidence.hpp"

#include <algorithm>
#include <numeric>

namespace gqtk {

std::vector<Index> primes_of_qe(const FiniteQuantale& q) {
  const Index e = q.unit();
  std::vector<Index> qe;
  for (Index a = 0; a < q.size(); ++a)
    if (q.leq(a, e)) qe.push_back(a);
  std::vector<Index> out;
  for (Index p : qe) {
    if (p == e) continue;
    bool prime = true;
    for (std::size_t i = 0; i < qe.size() && prime; ++i)
      for (std::size_t j = i; j < qe.size(); ++j) {
        const Index h = qe[i], k = qe[j];
        if (q.leq(q.meet(h, k), p) && !q.leq(h, p) && !q.leq(k, p)) {
          prime = false;
          break;
        }
      }
    if (prime) out.push_back(p);
  }
  return out;
}

bool incident(const FiniteQuantale& q, Index p, Index f, Index g) {
  const Index df = q.mul(f, q.star(f)), dg = q.mul(g, q.star(g));
  const Index bound = q.meet(df, dg);
  const Index rhs = q.join(q.mul(p, f), g);
  for (Index h = 0; h < q.size(); ++h)
    if (q.leq(h, bound) && !q.leq(h, p) && q.leq(q.mul(h, f), rhs)) return true;
  return false;
}

IncidenceAnalysis::IncidenceAnalysis(FiniteQuantale q) : q_(std::move(q)) {
  const std::size_t n = q_.size();
  const PartialUnitSet pu = gqtk::partial_units(q_);
  units_ = pu.partial_units;
  qe_ = pu.qe;
  primes_ = primes_of_qe(q_);
  prime_pos_.assign(n, -1);
  unit_pos_.assign(n, -1);
  for (std::size_t i = 0; i < primes_.size(); ++i) prime_pos_[primes_[i]] = static_cast<int>(i);
  for (std::size_t i = 0; i < units_.size(); ++i) unit_pos_[units_[i]] = static_cast<int>(i);

  pair_id_.assign(primes_.size(), std::vector<int>(units_.size(), -1));
  for (std::size_t i = 0; i < primes_.size(); ++i)
    for (std::size_t j = 0; j < units_.size(); ++j)
      if (!q_.leq(d(units_[j]), primes_[i])) {
        pair_id_[i][j] = static_cast<int>(pairs_.size());
        pairs_.push_back({primes_[i], units_[j]});
      }

  // incident_[pair(p,f)][g] decides f ∼_p g.
  incident_.assign(pairs_.size(), std::vector<bool>(units_.size(), false));
  for (std::size_t i = 0; i < primes_.size(); ++i)
    for (std::size_t j = 0; j < units_.size(); ++j) {
      if (pair_id_[i][j] < 0) continue;
      for (std::size_t k = 0; k < units_.size(); ++k)
        if (pair_id_[i][k] >= 0)
          incident_[pair_id_[i][j]][k] = gqtk::incident(q_, primes_[i], units_[j], units_[k]);
    }

  // Union-find inside each prime, then re-verify that the relation is the partition.
  std::vector<std::size_t> parent(pairs_.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t a = 0; a < pairs_.size(); ++a)
    for (std::size_t k = 0; k < units_.size(); ++k)
      if (incident_[a][k]) {
        const std::size_t b = pair_id_[prime_pos(pairs_[a].p)][k];
        parent[find(a)] = find(b);
      }
  for (std::size_t i = 0; i < primes_.size(); ++i)
    for (std::size_t j = 0; j < units_.size(); ++j)
      for (std::size_t k = 0; k < units_.size(); ++k) {
        const int a = pair_id_[i][j], b = pair_id_[i][k];
        if (a < 0 || b < 0) continue;
        if (incident_[a][k] == (find(a) == find(b))) continue;
        const std::string p = element_name(q_, primes_[i]), f = element_name(q_, units_[j]),
                          g = element_name(q_, units_[k]);
        if (j == k) throw Error("NotEquivalence", "not reflexive: " + f + " ≁_" + p + " " + f);
        if (incident_[b][j]) throw Error("NotEquivalence", "not symmetric: " + g + " ∼_" + p + " " + f + " but not conversely");
        throw Error("NotEquivalence", "not transitive: " + f + " and " + g + " are linked through ∼_" + p +
                                          " but " + f + " ≁_" + p + " " + g);
      }

  std::vector<int> class_index(pairs_.size(), -1);
  std::vector<std::size_t> roots;
  std::vector<std::vector<IncidencePair>> groups;
  for (std::size_t a = 0; a < pairs_.size(); ++a) {
    const std::size_t root = find(a);
    auto it = std::find(roots.begin(), roots.end(), root);
    if (it == roots.end()) {
      roots.push_back(root);
      groups.emplace_back();
      it = roots.end() - 1;
    }
    groups[static_cast<std::size_t>(it - roots.begin())].push_back(pairs_[a]);
  }
  for (auto& g : groups) {
    std::sort(g.begin(), g.end());
    classes_.push_back({g.front(), g});
  }
  std::sort(classes_.begin(), classes_.end(),
            [](const IncidenceClass& x, const IncidenceClass& y) { return x.rep < y.rep; });
  class_of_pair_.assign(pairs_.size(), 0);
  for (std::size_t c = 0; c < classes_.size(); ++c)
    for (const auto& m : classes_[c].members)
      class_of_pair_[pair_id_[prime_pos(m.p)][unit_pos(m.f)]] = c;

  transport_.assign(pairs_.size(), 0);
  for (std::size_t a = 0; a < pairs_.size(); ++a) {
    const auto [p, f] = pairs_[a];
    const Index pf = q_.mul(p, f), rf = r(f);
    int found = -1;
    for (std::size_t i = 0; i < primes_.size(); ++i) {
      if (q_.leq(rf, primes_[i]) || q_.mul(f, primes_[i]) != pf) continue;
      if (found >= 0)
        throw Error("NonUniqueTransport", element_name(q_, f) + "[" + element_name(q_, p) + "] is both " +
                                              element_name(q_, primes_[found]) + " and " + element_name(q_, primes_[i]));
      found = static_cast<int>(i);
    }
    if (found < 0) throw Error("NoTransport", element_name(q_, f) + "[" + element_name(q_, p) + "] does not exist");
    transport_[a] = static_cast<std::size_t>(found);
  }

  obstruction_.assign(pairs_.size(), 0);
  for (std::size_t a = 0; a < pairs_.size(); ++a) obstruction_[a] = class_obstruction(pairs_[a].p, pairs_[a].f);
}

std::size_t IncidenceAnalysis::prime_pos(Index p) const {
  if (p >= prime_pos_.size() || prime_pos_[p] < 0) throw Error("NotAPair", element_name(q_, p) + " is not a prime of Q_e");
  return static_cast<std::size_t>(prime_pos_[p]);
}

std::size_t IncidenceAnalysis::unit_pos(Index f) const {
  if (f >= unit_pos_.size() || unit_pos_[f] < 0) throw Error("NotAPair", element_name(q_, f) + " is not a partial unit");
  return static_cast<std::size_t>(unit_pos_[f]);
}

bool IncidenceAnalysis::is_pair(Index p, Index f) const {
  if (p >= q_.size() || f >= q_.size() || prime_pos_[p] < 0 || unit_pos_[f] < 0) return false;
  return pair_id_[prime_pos_[p]][unit_pos_[f]] >= 0;
}

bool IncidenceAnalysis::incident(Index p, Index f, Index g) const {
  if (!is_pair(p, f) || !is_pair(p, g)) return false;
  return incident_[pair_id_[prime_pos(p)][unit_pos(f)]][unit_pos(g)];
}

std::size_t IncidenceAnalysis::class_of(Index p, Index f) const {
  if (!is_pair(p, f)) throw Error("NotAPair", "(" + element_name(q_, p) + "," + element_name(q_, f) + ")");
  return class_of_pair_[pair_id_[prime_pos(p)][unit_pos(f)]];
}

Index IncidenceAnalysis::transport(Index p, Index f) const {
  if (!is_pair(p, f)) throw Error("NotAPair", "(" + element_name(q_, p) + "," + element_name(q_, f) + ")");
  return primes_[transport_[pair_id_[prime_pos(p)][unit_pos(f)]]];
}

Index IncidenceAnalysis::class_obstruction(Index p, Index f) const {
  if (!is_pair(p, f)) throw Error("NotAPair", "(" + element_name(q_, p) + "," + element_name(q_, f) + ")");
  Index acc = q_.bottom();
  for (Index g : units_)
    if (q_.leq(d(g), p) || !incident(p, g, f)) acc = q_.join(acc, g);
  return acc;
}

SpatialReport IncidenceAnalysis::check_spatial() const {
  SpatialReport rep;
  for (std::size_t a = 0; a < pairs_.size(); ++a)
    if (q_.leq(pairs_[a].f, obstruction_[a])) {
      rep.spq1 = Verdict::fail(element_name(q_, pairs_[a].f) + " <= I_[" + element_name(q_, pairs_[a].p) + "," +
                               element_name(q_, pairs_[a].f) + "]");
      break;
    }
  std::vector<Index> obstructions = obstruction_;
  std::sort(obstructions.begin(), obstructions.end());
  obstructions.erase(std::unique(obstructions.begin(), obstructions.end()), obstructions.end());
  for (Index a = 0; a < q_.size(); ++a) {
    std::vector<Index> above;
    for (Index i : obstructions)
      if (q_.leq(a, i)) above.push_back(i);
    if (above.empty()) rep.empty_meets.push_back(a);
    const Index m = q_.meet_of(above);
    if (m != a && rep.spq2.holds)
      rep.spq2 = Verdict::fail(element_name(q_, a) + " is not the meet of the I_[p,f] above it (meet is " +
                               element_name(q_, m) + ")");
  }
  return rep;
}

const ReconstructedGroupoid& IncidenceAnalysis::groupoid() const {
  if (groupoid_) return *groupoid_;
  if (primes_.size() > kMaxCarrier || classes_.size() > kMaxCarrier)
    throw Error("TooLarge", "G(Q) has more than 64 points or arrows");
  std::vector<std::string> names;
  for (std::size_t i = 0; i < primes_.size(); ++i) names.push_back("P" + std::to_string(i));
  std::vector<Mask> opens;
  for (Index h : qe_) {
    Mask u = 0;
    for (std::size_t i = 0; i < primes_.size(); ++i)
      if (!q_.leq(h, primes_[i])) u |= bit(i);
    opens.push_back(u);
  }
  GroupoidData data{validate_space(names, opens), {}, {}, {}, {}, {}, {}};
  const std::size_t m = classes_.size();
  for (const auto& c : classes_) {
    data.arrows.push_back("[P" + std::to_string(prime_pos(c.rep.p)) + "," + element_name(q_, c.rep.f) + "]");
    data.d.push_back(prime_pos(c.rep.p));
    data.r.push_back(prime_pos(transport(c.rep.p, c.rep.f)));
  }
  for (Index p : primes_) data.u.push_back(class_of(p, q_.unit()));
  data.product.assign(m * m, kUndefined);
  for (std::size_t x = 0; x < m; ++x) {
    const auto [p, f] = classes_[x].rep;
    data.inverse.push_back(class_of(transport(p, f), q_.star(f)));
    for (std::size_t y = 0; y < m; ++y) {
      if (data.r[x] != data.d[y]) continue;
      const Index fg = q_.mul(f, classes_[y].rep.f);
      if (!is_pair(p, fg))
        throw Error("ReconstructionFailed", "(" + element_name(q_, p) + "," + element_name(q_, fg) +
                                                ") is not an incidence pair");
      data.product[x * m + y] = static_cast<int>(class_of(p, fg));
    }
  }
  ReconstructedGroupoid rec{validate_groupoid(std::move(data)), {}, {}};
  rec.point_prime = primes_;
  for (const auto& c : classes_) rec.arrow_rep.push_back(c.rep);
  groupoid_ = std::move(rec);
  return *groupoid_;
}

Mask IncidenceAnalysis::alpha(Index a) const {
  if (classes_.size() > kMaxCarrier) throw Error("TooLarge", "more than 64 incidence classes");
  Mask out = 0;
  for (std::size_t c = 0; c < classes_.size(); ++c) {
    const auto& rep = classes_[c].rep;
    if (!q_.leq(a, obstruction_[pair_id_[prime_pos(rep.p)][unit_pos(rep.f)]])) out |= bit(c);
  }
  return out;
}

AlphaReport IncidenceAnalysis::check_alpha_theorem() const {
  const FiniteGroupoid& g = groupoid().groupoid;
  const std::size_t n = q_.size();
  std::vector<Mask> al(n);
  for (Index a = 0; a < n; ++a) al[a] = alpha(a);
  AlphaReport rep;
  auto name = [&](Index a) { return element_name(q_, a); };
  if (al[q_.bottom()] != 0) rep.joins = Verdict::fail("α(0) = " + g.format(al[q_.bottom()]));
  for (Index a = 0; a < n; ++a)
    for (Index b = 0; b < n; ++b) {
      if (rep.joins.holds && al[q_.join(a, b)] != (al[a] | al[b]))
        rep.joins = Verdict::fail("α(" + name(a) + " ∨ " + name(b) + ") differs from the union");
      if (rep.embedding.holds && q_.leq(a, b) != is_subset(al[a], al[b]))
        rep.embedding = Verdict::fail(name(a) + " <= " + name(b) + " is not reflected by α");
      if (rep.product.holds && al[q_.mul(a, b)] != lift_product(g, al[a], al[b]))
        rep.product = Verdict::fail("α(" + name(a) + "·" + name(b) + ") differs from α(" + name(a) + ")α(" + name(b) + ")");
    }
  for (Index a = 0; a < n && rep.involution.holds; ++a)
    if (al[q_.star(a)] != lift_involution(g, al[a])) rep.involution = Verdict::fail("α(" + name(a) + "*) differs from α(" + name(a) + ")*");
  if (al[q_.top()] != g.all_arrows())
    rep.units = Verdict::fail("α(1) = " + g.format(al[q_.top()]));
  else if (al[q_.unit()] != g.units())
    rep.units = Verdict::fail("α(e) = " + g.format(al[q_.unit()]));
  return rep;
}

EtaleResult check_etale_lemma(const IncidenceAnalysis& a) {
  const FiniteQuantale& q = a.quantale();
  EtaleResult res;
  if (!check_inverse_quantal_frame(q).holds()) {
    res.skipped = true;
    return res;
  }
  for (const auto& [p, f] : a.pairs())
    for (Index g : a.partial_units()) {
      if (!a.incident(p, f, g)) continue;
      const Index bound = q.meet(a.d(f), a.d(g));
      bool found = false;
      for (Index k : a.qe())
        if (q.leq(k, bound) && !q.leq(k, p) && q.mul(k, f) == q.mul(k, g)) {
          found = true;
          break;
        }
      if (!found) {
        res.verdict = Verdict::fail(element_name(q, f) + " ∼_" + element_name(q, p) + " " + element_name(q, g) +
                                    " without a common restriction");
        return res;
      }
    }
  return res;
}

RoundTripReport roundtrip_quantale(const FiniteQuantale& q, std::size_t budget) {
  RoundTripReport rep;
  rep.direction = "quantale";
  auto fail = [&](std::string stage, std::string detail) {
    rep.stage = std::move(stage);
    rep.detail = std::move(detail);
    return rep;
  };
  if (const auto axioms = check_quantale_axioms(q); !axioms.ok())
    return fail("axioms", axioms.first_failure()->axiom + ": " + axioms.first_failure()->verdict.witness);
  if (const auto sgf = check_sgf(q); !sgf.all()) return fail("sgf", "Q is not an SGF-quantale");
  try {
    IncidenceAnalysis an(q);
    if (const auto sp = an.check_spatial(); !sp.ok())
      return fail("spatial", sp.spq1.holds ? sp.spq2.witness : sp.spq1.witness);
    const FiniteGroupoid& g = an.groupoid().groupoid;
    std::vector<Mask> family;
    for (Index f : an.partial_units()) family.push_back(an.alpha(f));
    SelectionBase base;
    try {
      base = validate_selection_base(g, family);
    } catch (const Error& e) {
      return fail("selection-base", e.what());
    }
    const GroupoidQuantale rebuilt = build_gq(base, budget);
    const auto iso = quantale_isomorphic(q, rebuilt.quantale);
    if (const auto* ni = std::get_if<NotIsomorphic>(&iso))
      return fail("isomorphism", ni->invariant + ": " + ni->left + " vs " + ni->right);
    rep.quantale_iso = std::get<QuantaleIso>(iso);
    rep.ok = true;
    return rep;
  } catch (const BudgetExceeded&) {
    throw;
  } catch (const Error& e) {
    return fail("reconstruction", e.what());
  }
}

RoundTripReport roundtrip_groupoid(const SelectionBase& base, std::size_t budget) {
  RoundTripReport rep;
  rep.direction = "groupoid";
  try {
    const GroupoidQuantale gq = build_gq(base, budget);
    IncidenceAnalysis an(gq.quantale);
    const auto iso = groupoid_isomorphic(base.groupoid(), an.groupoid().groupoid);
    if (const auto* ni = std::get_if<NotIsomorphic>(&iso)) {
      rep.stage = "isomorphism";
      rep.detail = ni->invariant + ": " + ni->left + " vs " + ni->right;
      return rep;
    }
    rep.groupoid_iso = std::get<GroupoidIso>(iso);
    rep.ok = true;
  } catch (const BudgetExceeded&) {
    throw;
  } catch (const Error& e) {
    rep.stage = "reconstruction";
    rep.detail = e.what();
  }
  return rep;
}

}  // namespace gqtk
