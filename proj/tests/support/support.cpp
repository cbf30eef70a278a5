#include "support.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <set>
#include <sstream>

namespace gqtk::testing {

Mask closure_oracle(const FiniteSpace& s, std::size_t p) {
  Mask c = s.full();
  for (Mask u : s.opens()) {
    const Mask closed = s.full() & ~u;
    if (closed & bit(p)) c &= closed;
  }
  return c;
}

bool t0_oracle(const FiniteSpace& s) {
  for (std::size_t x = 0; x < s.size(); ++x)
    for (std::size_t y = x + 1; y < s.size(); ++y) {
      bool separated = false;
      for (Mask u : s.opens())
        if (((u >> x) & 1) != ((u >> y) & 1)) separated = true;
      if (!separated) return false;
    }
  return true;
}

bool locally_closed_union_oracle(const FiniteSpace& s, Mask y) {
  Mask covered = 0;
  for (Mask u : s.opens())
    for (Mask v : s.opens()) {
      const Mask piece = u & (s.full() & ~v);
      if (is_subset(piece, y)) covered |= piece;
    }
  return covered == y;
}

std::vector<Mask> prime_opens_oracle(const FiniteSpace& s) {
  std::vector<Mask> out;
  for (Mask p : s.opens()) {
    if (p == s.full()) continue;
    bool prime = true;
    for (Mask h : s.opens())
      for (Mask k : s.opens())
        if (is_subset(h & k, p) && !is_subset(h, p) && !is_subset(k, p)) prime = false;
    if (prime) out.push_back(p);
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

// Least upper bound read off the order alone.
Index lub(const FiniteQuantale& q, const std::vector<Index>& xs) {
  const Index n = static_cast<Index>(q.size());
  for (Index u = 0; u < n; ++u) {
    bool upper = std::all_of(xs.begin(), xs.end(), [&](Index x) { return q.leq(x, u); });
    if (!upper) continue;
    bool least = true;
    for (Index v = 0; v < n && least; ++v)
      if (std::all_of(xs.begin(), xs.end(), [&](Index x) { return q.leq(x, v); }) && !q.leq(u, v)) least = false;
    if (least) return u;
  }
  throw std::logic_error("no least upper bound");
}

}  // namespace

bool distributive_oracle(const FiniteQuantale& q) {
  const std::size_t n = q.size();
  if (n > 14) throw std::logic_error("distributive_oracle: too many subsets");
  for (std::uint32_t s = 0; s < (1u << n); ++s) {
    std::vector<Index> xs;
    for (Index i = 0; i < n; ++i)
      if (s & (1u << i)) xs.push_back(i);
    const Index j = lub(q, xs);
    for (Index a = 0; a < n; ++a) {
      std::vector<Index> left, right;
      for (Index x : xs) {
        left.push_back(q.mul(a, x));
        right.push_back(q.mul(x, a));
      }
      if (q.mul(a, j) != lub(q, left) || q.mul(j, a) != lub(q, right)) return false;
    }
  }
  return true;
}

bool incident_oracle(const FiniteQuantale& q, Index p, Index f, Index g) {
  const Index df = q.mul(f, q.star(f)), dg = q.mul(g, q.star(g));
  const Index rhs = q.join(q.mul(p, f), g);
  for (Index h = 0; h < q.size(); ++h) {
    if (!q.leq(h, q.unit())) continue;
    if (q.leq(h, df) && q.leq(h, dg) && !q.leq(h, p) && q.leq(q.mul(h, f), rhs)) return true;
  }
  return false;
}

const std::vector<GroupTable>& small_groups() {
  static const std::vector<GroupTable> groups = [] {
    std::vector<GroupTable> out;
    for (std::size_t k : {2u, 3u}) {
      GroupTable t{"Z" + std::to_string(k), {}, {}, 0};
      for (std::size_t i = 0; i < k; ++i) t.elements.push_back(i == 0 ? "e" : "a" + std::to_string(i));
      for (std::size_t g = 0; g < k; ++g)
        for (std::size_t h = 0; h < k; ++h) t.mult.push_back((g + h) % k);
      out.push_back(t);
    }
    std::vector<std::array<std::size_t, 3>> perms;
    std::array<std::size_t, 3> p{0, 1, 2};
    do perms.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    GroupTable s3{"S3", {}, {}, 0};
    for (const auto& x : perms) s3.elements.push_back(std::to_string(x[0]) + std::to_string(x[1]) + std::to_string(x[2]));
    for (const auto& g : perms)
      for (const auto& h : perms) {
        const std::array<std::size_t, 3> gh{g[h[0]], g[h[1]], g[h[2]]};
        s3.mult.push_back(static_cast<std::size_t>(std::find(perms.begin(), perms.end(), gh) - perms.begin()));
      }
    out.push_back(s3);
    return out;
  }();
  return groups;
}

FiniteSpace downset_space(const std::vector<std::vector<bool>>& leq) {
  const std::size_t n = leq.size();
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back("x" + std::to_string(i));
  std::vector<Mask> opens;
  for (Mask u = 0; u <= full_mask(n); ++u) {
    bool down = true;
    for (std::size_t y = 0; y < n && down; ++y)
      if (u & bit(y))
        for (std::size_t x = 0; x < n; ++x)
          if (leq[x][y] && !(u & bit(x))) down = false;
    if (down) opens.push_back(u);
  }
  return validate_space(std::move(names), opens);
}

namespace {

std::vector<std::vector<std::size_t>> subgroups(const GroupTable& t) {
  const std::size_t k = t.elements.size();
  std::vector<std::vector<std::size_t>> out;
  for (std::uint32_t s = 1; s < (1u << k); ++s) {
    if (!(s & 1u)) continue;  // identity is element 0
    bool closed = true;
    for (std::size_t g = 0; g < k && closed; ++g)
      for (std::size_t h = 0; h < k && closed; ++h)
        if ((s >> g & 1) && (s >> h & 1) && !(s >> t.mult[g * k + h] & 1)) closed = false;
    if (closed) out.push_back(bits_of(s));
  }
  return out;
}

std::vector<std::vector<bool>> transitive_closure(std::vector<std::vector<bool>> r) {
  const std::size_t n = r.size();
  for (std::size_t m = 0; m < n; ++m)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (r[i][m] && r[m][j]) r[i][j] = true;
  return r;
}

}  // namespace

namespace {

Instance draw_instance(std::mt19937_64& rng, std::size_t max_points) {
  const auto& groups = small_groups();
  const GroupTable& t = groups[std::uniform_int_distribution<std::size_t>(0, groups.size() - 1)(rng)];
  const std::size_t k = t.elements.size();
  const auto subs = subgroups(t);
  const std::size_t target = std::uniform_int_distribution<std::size_t>(1, max_points)(rng);

  // Points are cosets gH of the chosen subgroups; g acts by gH -> (g·rep)H within the orbit.
  std::vector<std::vector<std::size_t>> cosets;
  std::vector<std::size_t> orbit_of;
  std::size_t orbits = 0;
  while (cosets.size() < target) {
    std::vector<const std::vector<std::size_t>*> fitting;
    for (const auto& h : subs)
      if (cosets.size() + k / h.size() <= target) fitting.push_back(&h);
    const auto& h = *fitting[std::uniform_int_distribution<std::size_t>(0, fitting.size() - 1)(rng)];
    std::vector<std::vector<std::size_t>> orbit;
    for (std::size_t g = 0; g < k; ++g) {
      std::vector<std::size_t> c;
      for (std::size_t x : h) c.push_back(t.mult[g * k + x]);
      std::sort(c.begin(), c.end());
      if (std::find(orbit.begin(), orbit.end(), c) == orbit.end()) orbit.push_back(c);
    }
    for (auto& c : orbit) {
      cosets.push_back(std::move(c));
      orbit_of.push_back(orbits);
    }
    ++orbits;
  }
  const std::size_t n = cosets.size();
  std::vector<std::vector<std::size_t>> act(k, std::vector<std::size_t>(n));
  for (std::size_t g = 0; g < k; ++g)
    for (std::size_t x = 0; x < n; ++x) {
      const std::size_t image = t.mult[g * k + cosets[x].front()];
      for (std::size_t y = 0; y < n; ++y)
        if (orbit_of[y] == orbit_of[x] && std::binary_search(cosets[y].begin(), cosets[y].end(), image)) act[g][x] = y;
    }

  // Random G-invariant order: add orbits of pairs, keep each addition that stays antisymmetric.
  std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
  for (std::size_t x = 0; x < n; ++x) leq[x][x] = true;
  const std::size_t tries = std::uniform_int_distribution<std::size_t>(0, 4)(rng);
  std::size_t added = 0;
  for (std::size_t i = 0; i < tries && n > 1; ++i) {
    const std::size_t x = std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
    const std::size_t y = std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
    if (x == y) continue;
    auto next = leq;
    for (std::size_t g = 0; g < k; ++g) next[act[g][x]][act[g][y]] = true;
    next = transitive_closure(std::move(next));
    bool antisymmetric = true;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b)
        if (next[a][b] && next[b][a]) antisymmetric = false;
    if (antisymmetric) {
      leq = std::move(next);
      ++added;
    }
  }

  GroupAction action;
  action.space = downset_space(leq);
  action.elements = t.elements;
  action.mult = t.mult;
  action.identity = t.identity;
  action.act = act;
  validate_action(action);
  FiniteGroupoid g = orbit_relation_groupoid(action);
  std::vector<Mask> base = canonical_base_from_action(action, g);
  std::ostringstream label;
  label << t.name << " on " << n << " points, " << orbits << " orbits, " << added << " order steps";
  return {label.str(), 0, std::move(action), std::move(g), std::move(base)};
}

}  // namespace

Instance random_instance(std::mt19937_64& rng, std::size_t max_points, std::size_t max_quantale) {
  for (std::size_t rejected = 0;; ++rejected) {
    Instance inst = draw_instance(rng, max_points);
    if (union_closure(inst.base).size() <= max_quantale) {
      inst.rejected = rejected;
      return inst;
    }
  }
}

FixtureRun run_fixture(const std::string& name) {
  const Fixture& fixture = find_fixture(name);
  BaseInput in = parse_base(fixture.doc);
  SelectionBase base = validate_selection_base(in.groupoid.groupoid, in.family);
  GroupoidQuantale gq = build_gq(base);
  return {&fixture, std::move(in), std::move(base), std::move(gq)};
}

Index listed_member(const FixtureRun& run, const std::string& name) {
  const FiniteGroupoid& g = run.input.groupoid.groupoid;
  for (const auto& m : run.fixture->doc.at("base_listing")) {
    if (m.at("name") != name) continue;
    Mask s = 0;
    for (const auto& ref : m.at("arrows")) s |= bit(parse_arrow_ref(g, ref));
    if (auto i = run.gq.quantale.find(s)) return *i;
  }
  throw std::logic_error("no listed member " + name);
}

Index prime_element(const FixtureRun& run, const std::string& point) {
  const FiniteGroupoid& g = run.input.groupoid.groupoid;
  const FiniteSpace& s = g.space();
  return *run.gq.quantale.find(g.unit_image(s.full() & ~closure_oracle(s, s.index_of(point))));
}

namespace {

struct Collector {
  std::vector<Finding> out;
  void fail(const std::string& law, const std::string& witness) {
    // One witness per law keeps reports short.
    for (const auto& f : out)
      if (f.law == law) return;
    out.push_back({law, witness});
  }
};

std::string nm(const FiniteQuantale& q, Index a) { return element_name(q, a); }

// Primes of the principal down-set of h, as a frame in its own right.
std::vector<Index> primes_below(const FiniteQuantale& q, Index h) {
  std::vector<Index> below, out;
  for (Index a = 0; a < q.size(); ++a)
    if (q.leq(a, h)) below.push_back(a);
  for (Index p : below) {
    if (p == h) continue;
    bool prime = true;
    for (Index x : below)
      for (Index y : below)
        if (q.leq(q.meet(x, y), p) && !q.leq(x, p) && !q.leq(y, p)) prime = false;
    if (prime) out.push_back(p);
  }
  return out;
}

}  // namespace

std::vector<Finding> check_unit_identities(const FiniteQuantale& q) {
  Collector c;
  const PartialUnitSet pu = partial_units(q);
  const auto& I = pu.partial_units;
  const auto& E = pu.qe;
  auto d = [&](Index f) { return q.mul(f, q.star(f)); };
  auto r = [&](Index f) { return q.mul(q.star(f), f); };
  auto conj = [&](Index h, Index f) { return q.mul(q.mul(q.star(f), h), f); };

  for (Index f : pu.functional)
    for (Index g : pu.functional)
      if (q.leq(f, g) && ((f == g) != (d(f) == d(g))))
        c.fail("comparable functional elements are equal iff their ff* agree", nm(q, f) + " <= " + nm(q, g));

  for (Index f : I)
    for (Index g : I) {
      bool natural = false;
      for (Index h : E)
        if (q.mul(g, h) == f) natural = true;
      if (q.leq(f, g) != natural) c.fail("natural order on partial units is the quantale order", nm(q, f) + ", " + nm(q, g));
    }

  for (Index f : I) {
    if (conjugate(q, q.unit(), f) != r(f)) c.fail("e^f = r(f)", nm(q, f));
    for (Index h : E) {
      const Index hf = conj(h, f);
      if (conjugate(q, h, f) != hf) c.fail("conjugate computes f*hf", nm(q, h) + "^" + nm(q, f));
      if (!q.leq(hf, q.unit())) c.fail("h^f lies in Q_e", nm(q, h) + "^" + nm(q, f));
      if (q.mul(h, f) != q.mul(f, hf)) c.fail("hf = f h^f", nm(q, h) + ", " + nm(q, f));
      if (q.mul(q.star(f), h) != q.mul(hf, q.star(f))) c.fail("f*h = h^f f*", nm(q, h) + ", " + nm(q, f));
      if (q.leq(h, d(f)) && q.mul(q.mul(f, hf), q.star(f)) != h) c.fail("h <= ff* gives h = f h^f f*", nm(q, h) + ", " + nm(q, f));
      if (d(q.mul(h, f)) != q.meet(h, d(f))) c.fail("d(hf) = h ∧ d(f)", nm(q, h) + ", " + nm(q, f));
      if (r(q.mul(f, h)) != q.meet(r(f), h)) c.fail("r(fk) = r(f) ∧ k", nm(q, f) + ", " + nm(q, h));
      for (Index g : I)
        if (conj(hf, g) != conj(h, q.mul(f, g))) c.fail("(h^f)^g = h^(fg)", nm(q, h) + ", " + nm(q, f) + ", " + nm(q, g));
    }
    if (r(f) != conj(d(f), f)) c.fail("r(f) = d(f)^f", nm(q, f));
    if (d(f) != conj(r(f), q.star(f))) c.fail("d(f) = r(f)^(f*)", nm(q, f));
    for (Index g : I) {
      const Index fg = q.mul(f, g);
      if (d(fg) != conj(d(g), q.star(f))) c.fail("d(fg) = d(g)^(f*)", nm(q, f) + ", " + nm(q, g));
      if (r(fg) != conj(r(f), g)) c.fail("r(fg) = r(f)^g", nm(q, f) + ", " + nm(q, g));
      if (q.leq(f, g) && (!q.leq(d(f), d(g)) || !q.leq(r(f), r(g)))) c.fail("d and r are monotone", nm(q, f) + " <= " + nm(q, g));
    }

    // h -> h^f is an order isomorphism from the down-set of d(f) onto that of r(f),
    // inverse k -> k^(f*), and it carries primes to primes.
    std::vector<Index> dom, cod;
    for (Index h : E) {
      if (q.leq(h, d(f))) dom.push_back(h);
      if (q.leq(h, r(f))) cod.push_back(h);
    }
    std::set<Index> image;
    for (Index h : dom) {
      const Index k = conj(h, f);
      image.insert(k);
      if (!q.leq(k, r(f)) || conj(k, q.star(f)) != h) c.fail("transport between down-sets is invertible", nm(q, h) + "^" + nm(q, f));
      for (Index h2 : dom)
        if (q.leq(h, h2) != q.leq(k, conj(h2, f))) c.fail("transport between down-sets is an order embedding", nm(q, f));
    }
    if (image.size() != cod.size()) c.fail("transport between down-sets is onto", nm(q, f));
    std::set<Index> moved;
    for (Index p : primes_below(q, d(f))) moved.insert(conj(p, f));
    const auto target = primes_below(q, r(f));
    if (moved != std::set<Index>(target.begin(), target.end())) c.fail("transport carries primes to primes", nm(q, f));
  }
  return c.out;
}

std::vector<Finding> check_incidence_laws(const IncidenceAnalysis& a) {
  Collector c;
  const FiniteQuantale& q = a.quantale();
  const auto& P = a.primes();
  const auto& I = a.partial_units();
  const auto& E = a.qe();
  auto conj = [&](Index h, Index f) { return q.mul(q.mul(q.star(f), h), f); };
  auto pair_name = [&](Index p, Index f) { return "(" + nm(q, p) + "," + nm(q, f) + ")"; };
  auto inc = [&](Index p, Index f, Index g) { return a.is_pair(p, f) && a.is_pair(p, g) && a.incident(p, f, g); };
  std::map<std::pair<Index, Index>, std::vector<Index>> partner_table;
  for (const auto& pr : a.pairs())
    for (Index g : I)
      if (inc(pr.p, pr.f, g)) partner_table[{pr.p, pr.f}].push_back(g);
  auto partners = [&](Index p, Index f) -> const std::vector<Index>& { return partner_table.at({p, f}); };

  for (Index p : P)
    for (Index f : I)
      for (Index g : I)
        if (a.is_pair(p, f) && a.is_pair(p, g) && a.incident(p, f, g) != incident_oracle(q, p, f, g))
          c.fail("incidence table matches the definition", pair_name(p, f) + " vs " + nm(q, g));

  for (Index p : P)
    for (Index f : I) {
      if (!a.is_pair(p, f)) continue;
      const Index fp = a.transport(p, f);
      // Transport is the unique prime q with r(f) ≰ q and pf = fq.
      std::size_t hits = 0;
      for (Index t : P)
        if (!q.leq(a.r(f), t) && q.mul(p, f) == q.mul(f, t)) ++hits;
      if (hits != 1 || q.leq(a.r(f), fp) || q.mul(p, f) != q.mul(f, fp)) c.fail("f[p] is the unique prime with pf = f f[p]", pair_name(p, f));
      for (Index h : E) {
        if (q.leq(h, p)) continue;
        if (q.leq(conj(h, f), fp)) c.fail("h ≰ p gives h^f ≰ f[p]", nm(q, h) + " at " + pair_name(p, f));
        const Index hf = q.mul(h, f);
        if (q.leq(a.d(hf), p) || q.leq(a.r(hf), fp)) c.fail("h ≰ p gives d(hf) ≰ p and r(hf) ≰ f[p]", nm(q, h) + " at " + pair_name(p, f));
      }
      const Index fs = q.star(f);
      if (!a.is_pair(fp, fs) || a.transport(fp, fs) != p) c.fail("(f[p], f*) is a pair and f*[f[p]] = p", pair_name(p, f));
      if (!inc(p, a.d(f), q.unit())) c.fail("ff* is incident to e at p", pair_name(p, f));
      if (!inc(fp, a.r(f), q.unit())) c.fail("f*f is incident to e at f[p]", pair_name(p, f));
      for (Index g : I) {
        if (a.is_pair(fp, g)) {
          const Index fg = q.mul(f, g);
          if (!a.is_pair(p, fg) || a.transport(p, fg) != a.transport(fp, g))
            c.fail("composable transports compose", pair_name(p, f) + " then " + nm(q, g));
        }
        if (!inc(p, f, g)) continue;
        if (!inc(p, g, f)) c.fail("incidence is symmetric", pair_name(p, f) + " ~ " + nm(q, g));
        if (a.transport(p, g) != fp) c.fail("incident elements share their transport", pair_name(p, f) + " ~ " + nm(q, g));
        if (!inc(fp, fs, q.star(g))) c.fail("incidence passes to involutes", pair_name(p, f) + " ~ " + nm(q, g));
        for (Index g2 : I) {
          if (q.leq(g, g2) && !inc(p, f, g2)) c.fail("incidence is upward closed", pair_name(p, f) + " ~ " + nm(q, g) + " <= " + nm(q, g2));
          if (inc(p, g, g2) && !inc(p, f, g2)) c.fail("incidence is transitive", pair_name(p, f) + ", " + nm(q, g) + ", " + nm(q, g2));
        }
        for (Index f2 : I)
          if (a.is_pair(fp, f2))
            for (Index g2 : partners(fp, f2))
              if (!inc(p, q.mul(f, f2), q.mul(g, g2)))
                c.fail("incidence is compatible with products", pair_name(p, f) + " ~ " + nm(q, g) + " and " + nm(q, f2) + " ~ " + nm(q, g2));
      }
      if (!inc(p, f, f)) c.fail("incidence is reflexive", pair_name(p, f));
      for (Index g : I)
        if (a.is_pair(p, g) && a.is_pair(fp, q.star(g)) && inc(fp, fs, q.star(g)) != inc(p, f, g))
          c.fail("incidence reflects from involutes", pair_name(p, f) + ", " + nm(q, g));
    }

  const SpatialReport sp = a.check_spatial();
  for (const auto& pr : a.pairs()) {
    Index obstruction = q.bottom();
    for (Index g : I)
      if (q.leq(a.d(g), pr.p) || !inc(pr.p, g, pr.f)) obstruction = q.join(obstruction, g);
    if (obstruction != a.class_obstruction(pr.p, pr.f)) c.fail("obstruction is the join of its defining set", pair_name(pr.p, pr.f));
    if (!sp.spq1.holds) continue;
    for (Index g : I)
      if (q.leq(g, obstruction) != (q.leq(a.d(g), pr.p) || !inc(pr.p, g, pr.f)))
        c.fail("g <= I_[p,f] iff d(g) <= p or g is not incident to f", nm(q, g) + " vs " + pair_name(pr.p, pr.f));
  }

  if (sp.ok()) {
    for (Index h : E) {
      std::vector<Index> above;
      for (Index p : P)
        if (q.leq(h, p)) above.push_back(p);
      if (q.meet(q.meet_of(above), q.unit()) != h) c.fail("Q_e is spatial", nm(q, h));
    }
    for (Index g : I) {
      std::vector<Index> obs;
      for (const auto& pr : a.pairs())
        if (q.leq(a.d(g), pr.p) || !inc(pr.p, g, pr.f)) obs.push_back(a.class_obstruction(pr.p, pr.f));
      if (q.meet_of(obs) != g) c.fail("partial units are meets of obstructions", nm(q, g));
    }

    const ReconstructedGroupoid& rg = a.groupoid();
    const FiniteGroupoid& G = rg.groupoid;
    if (!groupoid_violations(G.data()).empty()) c.fail("reconstructed groupoid satisfies the groupoid axioms", groupoid_violations(G.data()).front().code);
    std::vector<Mask> family;
    for (Index f : I) {
      Mask expected = 0, domain = 0;
      for (std::size_t i = 0; i < rg.point_prime.size(); ++i)
        if (a.is_pair(rg.point_prime[i], f)) {
          expected |= bit(a.class_of(rg.point_prime[i], f));
          domain |= bit(i);
        }
      const Mask al = a.alpha(f);
      family.push_back(al);
      if (al != expected) c.fail("alpha(f) is the set of classes [p,f]", nm(q, f));
      const auto b = is_bisection_image(G, al);
      if (!b || b->domain != domain) c.fail("alpha(f) is a bisection image over U_d(f)", nm(q, f));
      for (Index g : I)
        if (q.leq(f, g) && !is_subset(al, a.alpha(g))) c.fail("alpha is monotone on partial units", nm(q, f) + " <= " + nm(q, g));
    }
    if (!check_selection_base(G, family).ok()) c.fail("alpha of the partial units is a selection base", "");
  }
  return c.out;
}

std::vector<Finding> check_all_laws(const IncidenceAnalysis& a) {
  auto out = check_unit_identities(a.quantale());
  auto more = check_incidence_laws(a);
  out.insert(out.end(), more.begin(), more.end());
  return out;
}

std::string describe(const std::vector<Finding>& findings, std::size_t limit) {
  std::string s;
  for (std::size_t i = 0; i < findings.size() && i < limit; ++i) {
    if (!s.empty()) s += "; ";
    s += findings[i].law + " [" + findings[i].witness + "]";
  }
  if (findings.size() > limit) s += "; +" + std::to_string(findings.size() - limit) + " more";
  return s;
}

}  // namespace gqtk::testing
