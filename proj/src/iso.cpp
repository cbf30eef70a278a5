#include "gqtk/iso.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <optional>
#include <map>

namespace gqtk {

namespace {

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

std::string str(std::size_t v) { return std::to_string(v); }

template <typename T>
std::string join_list(const std::vector<T>& xs) {
  std::string s = "[";
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + std::to_string(xs[i]);
  return s + "]";
}

class Budget {
 public:
  explicit Budget(std::size_t limit) : limit_(limit) {}
  void tick() {
    if (++used_ > limit_) throw BudgetExceeded("isomorphism search exceeded " + std::to_string(limit_) + " nodes");
  }

 private:
  std::size_t limit_, used_ = 0;
};

// Partial bijection with an undo trail and a propagation queue.
struct PartialMap {
  std::vector<std::size_t> fwd, bwd, trail;
  std::size_t queued = 0;

  PartialMap(std::size_t n, std::size_t m) : fwd(n, kNone), bwd(m, kNone) {}
  bool set(std::size_t a, std::size_t b) {
    if (fwd[a] == b) return true;
    if (fwd[a] != kNone || bwd[b] != kNone) return false;
    fwd[a] = b;
    bwd[b] = a;
    trail.push_back(a);
    return true;
  }
  void undo(std::size_t mark) {
    while (trail.size() > mark) {
      bwd[fwd[trail.back()]] = kNone;
      fwd[trail.back()] = kNone;
      trail.pop_back();
    }
    queued = std::min(queued, mark);
  }
};

using Signature = std::vector<long>;

std::vector<Signature> quantale_signatures(const FiniteQuantale& q) {
  const std::size_t n = q.size();
  std::vector<long> down(n, 0), up(n, 0);
  for (Index a = 0; a < n; ++a)
    for (Index b = 0; b < n; ++b)
      if (q.leq(a, b)) {
        ++up[a];
        ++down[b];
      }
  const PartialUnitSet pu = partial_units(q);
  std::vector<bool> in_i(n, false);
  for (Index f : pu.partial_units) in_i[f] = true;
  std::vector<Signature> sig(n);
  for (Index a = 0; a < n; ++a) {
    long fixes = 0;
    for (Index b = 0; b < n; ++b) fixes += q.mul(a, b) == a;
    sig[a] = {down[a],
              up[a],
              in_i[a] ? 1 : 0,
              q.leq(a, q.unit()) ? 1 : 0,
              a == q.unit() ? 1 : 0,
              q.mul(a, a) == a ? 1 : 0,
              q.star(a) == a ? 1 : 0,
              down[q.mul(a, q.star(a))],
              down[q.mul(q.star(a), a)],
              down[q.mul(a, a)],
              fixes};
  }
  return sig;
}

std::string sig_text(const Signature& s) { return join_list(s); }

}  // namespace

Verdict verify_quantale_iso(const FiniteQuantale& a, const FiniteQuantale& b, const QuantaleIso& iso) {
  const std::size_t n = a.size();
  if (b.size() != n || iso.map.size() != n) return Verdict::fail("sizes differ");
  std::vector<bool> hit(n, false);
  for (Index x : iso.map) {
    if (x >= n || hit[x]) return Verdict::fail("not a bijection at " + element_name(b, x));
    hit[x] = true;
  }
  const auto& m = iso.map;
  if (m[a.unit()] != b.unit()) return Verdict::fail("unit not preserved");
  for (Index x = 0; x < n; ++x) {
    if (m[a.star(x)] != b.star(m[x])) return Verdict::fail("involution at " + element_name(a, x));
    for (Index y = 0; y < n; ++y) {
      if (a.leq(x, y) != b.leq(m[x], m[y]))
        return Verdict::fail("order at (" + element_name(a, x) + "," + element_name(a, y) + ")");
      if (m[a.mul(x, y)] != b.mul(m[x], m[y]))
        return Verdict::fail("product at (" + element_name(a, x) + "," + element_name(a, y) + ")");
    }
  }
  return Verdict::pass();
}

QuantaleIsoResult quantale_isomorphic(const FiniteQuantale& a, const FiniteQuantale& b, std::size_t budget) {
  if (a.size() != b.size()) return NotIsomorphic{"size", str(a.size()), str(b.size())};
  const PartialUnitSet pa = partial_units(a), pb = partial_units(b);
  if (pa.qe.size() != pb.qe.size()) return NotIsomorphic{"unit-downset size", str(pa.qe.size()), str(pb.qe.size())};
  if (pa.partial_units.size() != pb.partial_units.size())
    return NotIsomorphic{"|I(Q)|", str(pa.partial_units.size()), str(pb.partial_units.size())};
  const bool da = is_distributive_lattice(a).holds, db = is_distributive_lattice(b).holds;
  if (da != db) return NotIsomorphic{"distributive lattice", da ? "true" : "false", db ? "true" : "false"};
  const auto sa = quantale_signatures(a), sb = quantale_signatures(b);
  {
    auto ma = sa, mb = sb;
    std::sort(ma.begin(), ma.end());
    std::sort(mb.begin(), mb.end());
    if (ma != mb) {
      std::size_t i = 0;
      while (ma[i] == mb[i]) ++i;
      return NotIsomorphic{"element signature multiset", sig_text(ma[i]), sig_text(mb[i])};
    }
  }

  const std::size_t n = a.size();
  PartialMap pm(n, n);
  Budget spent(budget);

  auto assign = [&](Index x, Index y) { return sa[x] == sb[y] && pm.set(x, y); };
  auto propagate = [&]() {
    while (pm.queued < pm.trail.size()) {
      const Index x = static_cast<Index>(pm.trail[pm.queued++]);
      const Index y = static_cast<Index>(pm.fwd[x]);
      if (!assign(a.star(x), b.star(y))) return false;
      for (std::size_t i = 0; i < pm.trail.size(); ++i) {
        const Index c = static_cast<Index>(pm.trail[i]);
        const Index mc = static_cast<Index>(pm.fwd[c]);
        if (!assign(a.join(x, c), b.join(y, mc)) || !assign(a.meet(x, c), b.meet(y, mc)) ||
            !assign(a.mul(x, c), b.mul(y, mc)) || !assign(a.mul(c, x), b.mul(mc, y)))
          return false;
      }
    }
    return true;
  };

  std::optional<QuantaleIso> found;
  std::function<void()> search = [&]() {
    spent.tick();
    if (pm.trail.size() == n) {
      QuantaleIso iso;
      for (std::size_t x = 0; x < n; ++x) iso.map.push_back(static_cast<Index>(pm.fwd[x]));
      if (verify_quantale_iso(a, b, iso).holds) found = std::move(iso);
      return;
    }
    Index best = 0;
    std::size_t best_count = kNone;
    for (Index x : a.linear_order()) {
      if (pm.fwd[x] != kNone) continue;
      std::size_t count = 0;
      for (Index y = 0; y < n; ++y) count += pm.bwd[y] == kNone && sa[x] == sb[y];
      if (count < best_count) {
        best = x;
        best_count = count;
      }
    }
    for (Index y : b.linear_order()) {
      if (pm.bwd[y] != kNone || sa[best] != sb[y]) continue;
      const std::size_t mark = pm.trail.size();
      if (assign(best, y) && propagate()) search();
      if (found) return;
      pm.undo(mark);
    }
  };

  if (assign(a.unit(), b.unit()) && assign(a.bottom(), b.bottom()) && assign(a.top(), b.top()) && propagate())
    search();
  if (found) return *found;
  return NotIsomorphic{"exhaustive search", "no structure-preserving bijection", "none found"};
}

Verdict verify_groupoid_iso(const FiniteGroupoid& a, const FiniteGroupoid& b, const GroupoidIso& iso) {
  const std::size_t np = a.space().size(), na = a.arrow_count();
  if (b.space().size() != np || b.arrow_count() != na || iso.points.size() != np || iso.arrows.size() != na)
    return Verdict::fail("sizes differ");
  auto bijective = [](const std::vector<std::size_t>& m) {
    std::vector<bool> hit(m.size(), false);
    for (std::size_t x : m) {
      if (x >= m.size() || hit[x]) return false;
      hit[x] = true;
    }
    return true;
  };
  if (!bijective(iso.points)) return Verdict::fail("point map is not a bijection");
  if (!bijective(iso.arrows)) return Verdict::fail("arrow map is not a bijection");
  auto image = [&](Mask u) {
    Mask out = 0;
    for_each_bit(u, [&](std::size_t p) { out |= bit(iso.points[p]); });
    return out;
  };
  if (a.space().opens().size() != b.space().opens().size()) return Verdict::fail("open counts differ");
  for (Mask u : a.space().opens())
    if (!b.space().is_open(image(u))) return Verdict::fail("image of open " + a.space().format(u) + " is not open");
  const auto& p = iso.points;
  const auto& m = iso.arrows;
  for (std::size_t q = 0; q < np; ++q)
    if (m[a.u(q)] != b.u(p[q])) return Verdict::fail("u not preserved at " + a.space().points()[q]);
  for (std::size_t x = 0; x < na; ++x) {
    if (p[a.d(x)] != b.d(m[x]) || p[a.r(x)] != b.r(m[x])) return Verdict::fail("d/r at " + a.arrow_name(x));
    if (m[a.inverse(x)] != b.inverse(m[x])) return Verdict::fail("inverse at " + a.arrow_name(x));
    for (std::size_t y = 0; y < na; ++y) {
      const int xy = a.compose(x, y), img = b.compose(m[x], m[y]);
      if ((xy == kUndefined) != (img == kUndefined) ||
          (xy != kUndefined && m[static_cast<std::size_t>(xy)] != static_cast<std::size_t>(img)))
        return Verdict::fail("product at (" + a.arrow_name(x) + "," + a.arrow_name(y) + ")");
    }
  }
  return Verdict::pass();
}

GroupoidIsoResult groupoid_isomorphic(const FiniteGroupoid& a, const FiniteGroupoid& b, std::size_t budget) {
  const FiniteSpace &xa = a.space(), &xb = b.space();
  const std::size_t np = xa.size(), na = a.arrow_count();
  if (np != xb.size()) return NotIsomorphic{"|G0|", str(np), str(xb.size())};
  if (na != b.arrow_count()) return NotIsomorphic{"|G1|", str(na), str(b.arrow_count())};
  if (xa.opens().size() != xb.opens().size())
    return NotIsomorphic{"open count", str(xa.opens().size()), str(xb.opens().size())};
  auto shape = [](const FiniteSpace& s) {
    std::vector<long> sizes;
    for (Mask u : s.opens()) sizes.push_back(popcount(u));
    std::sort(sizes.begin(), sizes.end());
    return sizes;
  };
  if (shape(xa) != shape(xb)) return NotIsomorphic{"open-set sizes", join_list(shape(xa)), join_list(shape(xb))};

  auto point_sigs = [](const FiniteGroupoid& g) {
    std::vector<Signature> sig;
    for (std::size_t p = 0; p < g.space().size(); ++p) {
      long loops = 0;
      for_each_bit(g.d_fiber(p), [&](std::size_t x) { loops += g.r(x) == p; });
      sig.push_back({popcount(g.d_fiber(p)), loops, popcount(g.space().closure_of(p)),
                     popcount(g.space().minimal_open(p))});
    }
    return sig;
  };
  const auto pa = point_sigs(a), pb = point_sigs(b);
  {
    auto ma = pa, mb = pb;
    std::sort(ma.begin(), ma.end());
    std::sort(mb.begin(), mb.end());
    if (ma != mb) {
      std::size_t i = 0;
      while (ma[i] == mb[i]) ++i;
      return NotIsomorphic{"point profile (fiber, isotropy, closure, neighbourhood)", sig_text(ma[i]), sig_text(mb[i])};
    }
  }

  // Number of arrows between each ordered pair of points.
  auto hom_counts = [](const FiniteGroupoid& g) {
    const std::size_t n = g.space().size();
    std::vector<int> c(n * n, 0);
    for (std::size_t x = 0; x < g.arrow_count(); ++x) ++c[g.d(x) * n + g.r(x)];
    return c;
  };
  const auto ha = hom_counts(a), hb = hom_counts(b);

  Budget spent(budget);
  std::vector<std::size_t> pmap(np, kNone), pinv(np, kNone);
  std::optional<GroupoidIso> found;

  auto arrow_search = [&]() {
    PartialMap am(na, na);
    auto assign = [&](std::size_t x, std::size_t y) {
      return b.d(y) == pmap[a.d(x)] && b.r(y) == pmap[a.r(x)] && am.set(x, y);
    };
    auto propagate = [&]() {
      while (am.queued < am.trail.size()) {
        const std::size_t x = am.trail[am.queued++], y = am.fwd[x];
        if (!assign(a.inverse(x), b.inverse(y))) return false;
        for (std::size_t i = 0; i < am.trail.size(); ++i) {
          const std::size_t z = am.trail[i], w = am.fwd[z];
          for (auto [l, r, l2, r2] : {std::array{x, z, y, w}, std::array{z, x, w, y}}) {
            const int lr = a.compose(l, r), img = b.compose(l2, r2);
            if ((lr == kUndefined) != (img == kUndefined)) return false;
            if (lr != kUndefined && !assign(static_cast<std::size_t>(lr), static_cast<std::size_t>(img))) return false;
          }
        }
      }
      return true;
    };
    std::function<bool()> rec = [&]() {
      spent.tick();
      if (am.trail.size() == na) {
        GroupoidIso iso{pmap, am.fwd};
        if (!verify_groupoid_iso(a, b, iso).holds) return false;
        found = std::move(iso);
        return true;
      }
      std::size_t x = 0;
      while (am.fwd[x] != kNone) ++x;
      for (std::size_t y = 0; y < na; ++y) {
        if (am.bwd[y] != kNone) continue;
        const std::size_t mark = am.trail.size();
        if (assign(x, y) && propagate() && rec()) return true;
        am.undo(mark);
      }
      return false;
    };
    for (std::size_t q = 0; q < np; ++q)
      if (!assign(a.u(q), b.u(pmap[q]))) return false;
    return propagate() && rec();
  };

  std::function<bool(std::size_t)> point_search = [&](std::size_t q) {
    spent.tick();
    if (q == np) return arrow_search();
    for (std::size_t t = 0; t < np; ++t) {
      if (pinv[t] != kNone || pa[q] != pb[t]) continue;
      bool ok = true;
      for (std::size_t s = 0; s < q && ok; ++s) {
        const std::size_t ts = pmap[s];
        ok = (is_subset(bit(s), xa.closure_of(q)) == is_subset(bit(ts), xb.closure_of(t))) &&
             (is_subset(bit(q), xa.closure_of(s)) == is_subset(bit(t), xb.closure_of(ts))) &&
             ha[s * np + q] == hb[ts * np + t] && ha[q * np + s] == hb[t * np + ts];
      }
      if (!ok || ha[q * np + q] != hb[t * np + t]) continue;
      pmap[q] = t;
      pinv[t] = q;
      if (point_search(q + 1)) return true;
      pmap[q] = pinv[t] = kNone;
    }
    return false;
  };

  if (point_search(0)) return *found;
  return NotIsomorphic{"exhaustive search", "no structure-preserving bijection", "none found"};
}

}  // namespace gqtk
