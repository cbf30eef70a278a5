#include "gqtk/groupoid.hpp"

#include <algorithm>
#include <set>

namespace gqtk {

Mask FiniteGroupoid::unit_image(Mask points) const {
  Mask out = 0;
  for_each_bit(points, [&](std::size_t p) { out |= bit(u(p)); });
  return out;
}

Mask FiniteGroupoid::d_image(Mask arrows) const {
  Mask out = 0;
  for_each_bit(arrows, [&](std::size_t x) { out |= bit(d(x)); });
  return out;
}

Mask FiniteGroupoid::r_image(Mask arrows) const {
  Mask out = 0;
  for_each_bit(arrows, [&](std::size_t x) { out |= bit(r(x)); });
  return out;
}

std::size_t FiniteGroupoid::arrow_index(std::string_view name) const {
  for (std::size_t i = 0; i < arrow_count(); ++i)
    if (data_.arrows[i] == name) return i;
  throw InputError("UnknownArrow", std::string(name));
}

std::string FiniteGroupoid::format(Mask arrows) const {
  std::string s = "{";
  bool first = true;
  for_each_bit(arrows, [&](std::size_t x) {
    if (!first) s += ",";
    s += data_.arrows[x];
    first = false;
  });
  return s + "}";
}

std::vector<Violation> groupoid_violations(const GroupoidData& g) {
  std::vector<Violation> out;
  const std::size_t n = g.arrows.size(), m = g.space.size();
  if (n > kMaxCarrier) return {{"Shape", "groupoids are limited to 64 arrows"}};
  if (g.d.size() != n || g.r.size() != n || g.inverse.size() != n || g.u.size() != m ||
      g.product.size() != n * n)
    return {{"Shape", "table sizes do not match the arrow and point counts"}};
  for (std::size_t x = 0; x < n; ++x)
    if (g.d[x] >= m || g.r[x] >= m || g.inverse[x] >= n) return {{"Shape", "index out of range at " + g.arrows[x]}};
  for (std::size_t p = 0; p < m; ++p)
    if (g.u[p] >= n) return {{"Shape", "u maps a point outside the arrows"}};
  for (int v : g.product)
    if (v < kUndefined || v >= static_cast<int>(n)) return {{"Shape", "product entry out of range"}};

  auto name = [&](std::size_t x) { return g.arrows[x]; };
  auto prod = [&](std::size_t x, std::size_t y) { return g.product[x * n + y]; };

  for (std::size_t p = 0; p < m; ++p)
    if (g.d[g.u[p]] != p || g.r[g.u[p]] != p)
      out.push_back({"G2", "d/r of u(" + g.space.name(p) + ") = " + name(g.u[p])});

  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      const bool composable = g.r[x] == g.d[y];
      const int xy = prod(x, y);
      if (composable != (xy != kUndefined)) {
        out.push_back({"G3", "product definedness wrong at (" + name(x) + ", " + name(y) + ")"});
        continue;
      }
      if (!composable) continue;
      if (g.d[xy] != g.d[x] || g.r[xy] != g.r[y])
        out.push_back({"G3", "d/r of " + name(x) + "·" + name(y)});
    }
  }
  if (out.empty()) {
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y) {
        const int xy = prod(x, y);
        if (xy == kUndefined) continue;
        for (std::size_t z = 0; z < n; ++z) {
          const int yz = prod(y, z);
          if (yz == kUndefined) continue;
          if (prod(static_cast<std::size_t>(xy), z) != prod(x, static_cast<std::size_t>(yz)))
            out.push_back({"G3", "associativity at (" + name(x) + ", " + name(y) + ", " + name(z) + ")"});
        }
      }
  }
  for (std::size_t x = 0; x < n; ++x) {
    if (prod(x, g.u[g.r[x]]) != static_cast<int>(x) || prod(g.u[g.d[x]], x) != static_cast<int>(x))
      out.push_back({"G4", "unit law at " + name(x)});
  }
  for (std::size_t x = 0; x < n; ++x) {
    const std::size_t xi = g.inverse[x];
    if (g.d[xi] != g.r[x] || g.r[xi] != g.d[x] || prod(x, xi) != static_cast<int>(g.u[g.d[x]]) ||
        prod(xi, x) != static_cast<int>(g.u[g.r[x]]))
      out.push_back({"G5", "inverse of " + name(x) + " is " + name(xi)});
  }
  return out;
}

FiniteGroupoid validate_groupoid(GroupoidData data) {
  auto violations = groupoid_violations(data);
  if (!violations.empty()) throw ValidationError("AxiomViolation", std::move(violations));
  FiniteGroupoid g;
  g.data_ = std::move(data);
  g.d_fiber_.assign(g.space().size(), 0);
  for (std::size_t x = 0; x < g.arrow_count(); ++x) g.d_fiber_[g.d(x)] |= bit(x);
  for (std::size_t p = 0; p < g.space().size(); ++p) g.units_ |= bit(g.u(p));
  return g;
}

FiniteGroupoid from_equivalence_relation(const FiniteSpace& space,
                                         const std::vector<std::pair<std::size_t, std::size_t>>& relation) {
  const std::size_t m = space.size();
  std::set<std::pair<std::size_t, std::size_t>> rel;
  for (auto [x, y] : relation) {
    if (x >= m || y >= m) throw InputError("UnknownPoint", "relation pair out of range");
    rel.insert({x, y});
  }
  auto pair_name = [&](std::size_t x, std::size_t y) { return "(" + space.name(x) + "," + space.name(y) + ")"; };
  for (std::size_t x = 0; x < m; ++x)
    if (!rel.count({x, x})) throw Error("NotEquivalence", "not reflexive at " + space.name(x));
  for (auto [x, y] : rel)
    if (!rel.count({y, x})) throw Error("NotEquivalence", "not symmetric: " + pair_name(x, y) + " without " + pair_name(y, x));
  for (auto [x, y] : rel)
    for (std::size_t z = 0; z < m; ++z)
      if (rel.count({y, z}) && !rel.count({x, z}))
        throw Error("NotEquivalence", "not transitive: " + pair_name(x, y) + ", " + pair_name(y, z));

  std::vector<std::pair<std::size_t, std::size_t>> arrows(rel.begin(), rel.end());
  const std::size_t n = arrows.size();
  auto index = [&](std::size_t x, std::size_t y) {
    return static_cast<std::size_t>(std::lower_bound(arrows.begin(), arrows.end(), std::make_pair(x, y)) - arrows.begin());
  };
  GroupoidData data;
  data.space = space;
  data.product.assign(n * n, kUndefined);
  for (std::size_t i = 0; i < n; ++i) {
    auto [x, y] = arrows[i];
    data.arrows.push_back(pair_name(x, y));
    data.d.push_back(x);
    data.r.push_back(y);
    data.inverse.push_back(index(y, x));
    for (std::size_t j = 0; j < n; ++j)
      if (arrows[j].first == y) data.product[i * n + j] = static_cast<int>(index(x, arrows[j].second));
  }
  for (std::size_t p = 0; p < m; ++p) data.u.push_back(index(p, p));
  return validate_groupoid(std::move(data));
}

void validate_action(const GroupAction& a) {
  std::vector<Violation> out;
  const std::size_t k = a.order(), m = a.space.size();
  if (k == 0 || a.mult.size() != k * k || a.identity >= k || a.act.size() != k) {
    throw ValidationError("InvalidAction", {{"Shape", "group table sizes are inconsistent"}});
  }
  for (std::size_t v : a.mult)
    if (v >= k) throw ValidationError("InvalidAction", {{"Shape", "multiplication entry out of range"}});
  for (const auto& row : a.act) {
    if (row.size() != m) throw ValidationError("InvalidAction", {{"Shape", "action row has wrong length"}});
    for (std::size_t v : row)
      if (v >= m) throw ValidationError("InvalidAction", {{"Shape", "action maps outside the space"}});
  }
  const auto& el = a.elements;
  for (std::size_t g = 0; g < k; ++g) {
    if (a.times(a.identity, g) != g || a.times(g, a.identity) != g) out.push_back({"GroupIdentity", el[g]});
    bool has_inverse = false;
    for (std::size_t h = 0; h < k; ++h)
      if (a.times(g, h) == a.identity && a.times(h, g) == a.identity) has_inverse = true;
    if (!has_inverse) out.push_back({"GroupInverse", el[g]});
    for (std::size_t h = 0; h < k; ++h)
      for (std::size_t l = 0; l < k; ++l)
        if (a.times(a.times(g, h), l) != a.times(g, a.times(h, l)))
          out.push_back({"GroupAssociativity", el[g] + "," + el[h] + "," + el[l]});
  }
  for (std::size_t x = 0; x < m; ++x)
    if (a.apply(a.identity, x) != x) out.push_back({"ActionIdentity", "e." + a.space.name(x)});
  for (std::size_t g = 0; g < k; ++g)
    for (std::size_t h = 0; h < k; ++h)
      for (std::size_t x = 0; x < m; ++x)
        if (a.apply(a.times(g, h), x) != a.apply(g, a.apply(h, x)))
          out.push_back({"ActionCompatibility", "(" + el[g] + el[h] + ")." + a.space.name(x)});
  for (std::size_t g = 0; g < k && out.empty(); ++g) {
    Mask image = 0;
    for (std::size_t x = 0; x < m; ++x) image |= bit(a.apply(g, x));
    if (image != a.space.full()) {
      out.push_back({"NotBijective", el[g]});
      continue;
    }
    for (Mask u : a.space.opens()) {
      Mask gu = 0;
      for_each_bit(u, [&](std::size_t x) { gu |= bit(a.apply(g, x)); });
      if (!a.space.is_open(gu)) out.push_back({"NotHomeomorphism", el[g] + " maps open " + a.space.format(u) + " to " + a.space.format(gu)});
    }
  }
  if (!out.empty()) throw ValidationError("InvalidAction", std::move(out));
}

FiniteGroupoid action_groupoid(const GroupAction& a) {
  validate_action(a);
  const std::size_t k = a.order(), m = a.space.size(), n = k * m;
  if (n > kMaxCarrier) throw InputError("TooLarge", "action groupoid would exceed 64 arrows");
  auto idx = [&](std::size_t g, std::size_t x) { return g * m + x; };
  std::vector<std::size_t> inv(k);
  for (std::size_t g = 0; g < k; ++g)
    for (std::size_t h = 0; h < k; ++h)
      if (a.times(g, h) == a.identity) inv[g] = h;

  GroupoidData data;
  data.space = a.space;
  data.product.assign(n * n, kUndefined);
  for (std::size_t g = 0; g < k; ++g) {
    for (std::size_t x = 0; x < m; ++x) {
      data.arrows.push_back("(" + a.elements[g] + "," + a.space.name(x) + ")");
      data.d.push_back(x);
      data.r.push_back(a.apply(g, x));
      data.inverse.push_back(idx(inv[g], a.apply(g, x)));
      for (std::size_t h = 0; h < k; ++h)
        data.product[idx(g, x) * n + idx(h, a.apply(g, x))] = static_cast<int>(idx(a.times(h, g), x));
    }
  }
  for (std::size_t x = 0; x < m; ++x) data.u.push_back(idx(a.identity, x));
  return validate_groupoid(std::move(data));
}

FiniteGroupoid orbit_relation_groupoid(const GroupAction& a) {
  validate_action(a);
  std::vector<std::pair<std::size_t, std::size_t>> rel;
  for (std::size_t g = 0; g < a.order(); ++g)
    for (std::size_t x = 0; x < a.space.size(); ++x) rel.emplace_back(x, a.apply(g, x));
  return from_equivalence_relation(a.space, rel);
}

namespace {

// t maps each point of `domain` along the unique arrow of the section.
bool is_partial_homeomorphism(const FiniteGroupoid& g, Mask carrier, Mask domain, Mask codomain) {
  const FiniteSpace& s = g.space();
  if (!s.is_open(domain) || !s.is_open(codomain)) return false;
  std::vector<std::size_t> to(s.size(), 0), from(s.size(), 0);
  for_each_bit(carrier, [&](std::size_t x) {
    to[g.d(x)] = g.r(x);
    from[g.r(x)] = g.d(x);
  });
  for (Mask w : s.opens()) {
    if (is_subset(w, domain)) {
      Mask img = 0;
      for_each_bit(w, [&](std::size_t p) { img |= bit(to[p]); });
      if (!s.is_open(img)) return false;
    }
    if (is_subset(w, codomain)) {
      Mask pre = 0;
      for_each_bit(w, [&](std::size_t q) { pre |= bit(from[q]); });
      if (!s.is_open(pre)) return false;
    }
  }
  return true;
}

}  // namespace

std::optional<BisectionImage> is_bisection_image(const FiniteGroupoid& g, Mask arrows) {
  if (!is_subset(arrows, g.all_arrows())) return std::nullopt;
  const Mask dom = g.d_image(arrows), cod = g.r_image(arrows);
  const int k = popcount(arrows);
  if (popcount(dom) != k || popcount(cod) != k) return std::nullopt;
  if (!is_partial_homeomorphism(g, arrows, dom, cod)) return std::nullopt;
  return BisectionImage{arrows, dom, cod};
}

int section_at(const FiniteGroupoid& g, Mask image, std::size_t p) {
  const Mask hit = image & g.d_fiber(p);
  return hit == 0 ? kUndefined : std::countr_zero(hit);
}

std::vector<BisectionImage> enumerate_bisection_images(const FiniteGroupoid& g, std::size_t section_budget) {
  std::vector<BisectionImage> out;
  std::size_t tried = 0;
  for (Mask dom : g.space().opens()) {
    const auto pts = bits_of(dom);
    std::vector<std::vector<std::size_t>> fibers;
    for (std::size_t p : pts) fibers.push_back(bits_of(g.d_fiber(p)));
    // Depth-first over one arrow per point, pruning non-injective r.
    auto rec = [&](auto&& self, std::size_t depth, Mask chosen, Mask used_r) -> void {
      if (depth == pts.size()) {
        if (++tried > section_budget)
          throw BudgetExceeded("more than " + std::to_string(section_budget) + " sections enumerated");
        if (is_partial_homeomorphism(g, chosen, dom, used_r)) out.push_back({chosen, dom, used_r});
        return;
      }
      for (std::size_t x : fibers[depth]) {
        if (used_r & bit(g.r(x))) continue;
        self(self, depth + 1, chosen | bit(x), used_r | bit(g.r(x)));
      }
    };
    rec(rec, 0, 0, 0);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return canonical_less(a.carrier, b.carrier); });
  return out;
}

bool is_sp(const FiniteGroupoid& g, std::span<const Mask> family) {
  Mask cover = 0;
  for (Mask s : family) cover |= s;
  return cover == g.all_arrows();
}

Mask lift_product(const FiniteGroupoid& g, Mask a, Mask b) {
  Mask out = 0;
  for_each_bit(a, [&](std::size_t x) {
    for_each_bit(b & g.d_fiber(g.r(x)), [&](std::size_t y) { out |= bit(static_cast<std::size_t>(g.compose(x, y))); });
  });
  return out;
}

Mask lift_involution(const FiniteGroupoid& g, Mask a) {
  Mask out = 0;
  for_each_bit(a, [&](std::size_t x) { out |= bit(g.inverse(x)); });
  return out;
}

}  // namespace gqtk
