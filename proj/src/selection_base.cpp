#include "gqtk/selection_base.hpp"

#include <algorithm>
#include <unordered_set>

#include "gqtk/incidence.hpp"

namespace gqtk {

namespace {

std::vector<Mask> canonical_family(std::span<const Mask> family) {
  std::vector<Mask> fam(family.begin(), family.end());
  std::sort(fam.begin(), fam.end(), canonical_less);
  fam.erase(std::unique(fam.begin(), fam.end()), fam.end());
  return fam;
}

bool compatible(const FiniteGroupoid& g, Mask a, Mask b) {
  const Mask e = g.units();
  return is_subset(lift_product(g, a, lift_involution(g, b)), e) &&
         is_subset(lift_product(g, lift_involution(g, a), b), e);
}

}  // namespace

bool SelectionBaseReport::ok() const {
  if (!members.holds) return false;
  for (const auto& v : sb)
    if (!v.holds) return false;
  return true;
}

std::vector<Mask> SelectionBase::carriers() const {
  std::vector<Mask> out;
  for (const auto& m : members_) out.push_back(m.carrier);
  return out;
}

Mask agreement_set(const FiniteGroupoid& g, Mask s, Mask t) {
  Mask out = 0;
  for (std::size_t p = 0; p < g.space().size(); ++p) {
    const int a = section_at(g, s, p);
    if (a != kUndefined && a == section_at(g, t, p)) out |= bit(p);
  }
  return out;
}

Verdict sb3_exhaustive(const FiniteGroupoid& g, std::span<const Mask> family) {
  const auto fam = canonical_family(family);
  const std::size_t k = fam.size();
  if (k > 20) throw Error("TooLarge", "exhaustive SB3 is limited to 20 members");
  std::unordered_set<Mask> members(fam.begin(), fam.end());
  std::vector<std::uint32_t> compat(k, 0);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      if (compatible(g, fam[i], fam[j])) compat[i] |= 1u << j;
  for (std::uint32_t sub = 0; sub < (1u << k); ++sub) {
    bool pairwise = true;
    Mask uni = 0;
    for (std::size_t i = 0; i < k && pairwise; ++i) {
      if (!(sub & (1u << i))) continue;
      if ((sub & compat[i]) != sub) pairwise = false;
      uni |= fam[i];
    }
    if (pairwise && !members.count(uni)) return Verdict::fail("union of compatible subfamily " + g.format(uni) + " missing");
  }
  return Verdict::pass();
}

SelectionBaseReport check_selection_base(const FiniteGroupoid& g, std::span<const Mask> family,
                                         const CheckOptions& opts) {
  SelectionBaseReport rep;
  const auto fam = canonical_family(family);
  std::unordered_set<Mask> members(fam.begin(), fam.end());
  auto has = [&](Mask m) { return members.count(m) != 0; };

  for (Mask s : fam)
    if (!is_bisection_image(g, s)) {
      rep.members = Verdict::fail(g.format(s) + " is not a bisection image");
      break;
    }

  // SB1: sub inverse monoid.
  if (!has(g.units())) rep.sb[0] = Verdict::fail("unit E = " + g.format(g.units()) + " missing");
  for (std::size_t i = 0; i < fam.size() && rep.sb[0].holds; ++i) {
    if (!has(lift_involution(g, fam[i]))) {
      rep.sb[0] = Verdict::fail("involution of " + g.format(fam[i]) + " missing");
      break;
    }
    for (Mask t : fam)
      if (!has(lift_product(g, fam[i], t))) {
        rep.sb[0] = Verdict::fail("product " + g.format(fam[i]) + "·" + g.format(t) + " missing");
        break;
      }
  }

  for (Mask u : g.space().opens())
    if (!has(g.unit_image(u))) {
      rep.sb[1] = Verdict::fail("u[" + g.space().format(u) + "] missing");
      break;
    }

  if (!has(0)) rep.sb[2] = Verdict::fail("empty union {} missing");
  for (std::size_t i = 0; i < fam.size() && rep.sb[2].holds; ++i)
    for (std::size_t j = i + 1; j < fam.size(); ++j)
      if (compatible(g, fam[i], fam[j]) && !has(fam[i] | fam[j])) {
        rep.sb[2] = Verdict::fail("compatible union " + g.format(fam[i]) + " ∪ " + g.format(fam[j]) + " missing");
        break;
      }
  if (opts.verify_oracles && fam.size() <= 16 && sb3_exhaustive(g, fam).holds != rep.sb[2].holds)
    throw Error("OracleMismatch", "binary SB3 check disagrees with the exhaustive subfamily check");

  for (std::size_t i = 0; i < fam.size() && rep.sb[3].holds; ++i)
    for (std::size_t j = i + 1; j < fam.size(); ++j) {
      const Mask agree = agreement_set(g, fam[i], fam[j]);
      if (!is_union_of_locally_closed(g.space(), agree, opts.verify_oracles)) {
        rep.sb[3] = Verdict::fail("agreement set " + g.space().format(agree) + " of " + g.format(fam[i]) + " and " +
                                  g.format(fam[j]));
        break;
      }
    }

  if (!is_sp(g, fam)) {
    Mask cover = 0;
    for (Mask s : fam) cover |= s;
    rep.sb[4] = Verdict::fail("uncovered arrows " + g.format(g.all_arrows() & ~cover));
  }
  return rep;
}

SelectionBase validate_selection_base(FiniteGroupoid groupoid, std::vector<Mask> family, const CheckOptions& opts) {
  SelectionBaseReport rep = check_selection_base(groupoid, family, opts);
  if (!rep.ok()) {
    std::vector<Violation> vs;
    if (!rep.members.holds) vs.push_back({"NotBisectionImage", rep.members.witness});
    for (std::size_t i = 0; i < rep.sb.size(); ++i)
      if (!rep.sb[i].holds) vs.push_back({"SB" + std::to_string(i + 1), rep.sb[i].witness});
    throw ValidationError("SelectionBase", std::move(vs));
  }
  SelectionBase base;
  for (Mask s : canonical_family(family)) base.members_.push_back(*is_bisection_image(groupoid, s));
  base.groupoid_ = std::move(groupoid);
  base.report_ = std::move(rep);
  return base;
}

std::vector<Mask> canonical_base_from_action(const GroupAction& action, const FiniteGroupoid& g) {
  validate_action(action);
  const FiniteSpace& space = g.space();
  if (space.size() != action.space.size() || space.opens() != action.space.opens())
    throw Error("ValidationFailed", "groupoid and action live on different spaces");
  {
    const FiniteGroupoid orbit = orbit_relation_groupoid(action);
    if (orbit.arrow_count() != g.arrow_count())
      throw Error("ValidationFailed", "groupoid is not the orbit relation of the action");
    for (std::size_t x = 0; x < g.arrow_count(); ++x)
      if (orbit.d(x) != g.d(x) || orbit.r(x) != g.r(x))
        throw Error("ValidationFailed", "groupoid is not the orbit relation of the action");
  }
  std::vector<Mask> out;
  for (const BisectionImage& img : enumerate_bisection_images(g)) {
    bool locally_constant = true;
    for_each_bit(img.domain, [&](std::size_t x) {
      if (!locally_constant) return;
      const Mask nbhd = space.minimal_open(x);
      bool some_element = false;
      for (std::size_t el = 0; el < action.order() && !some_element; ++el) {
        bool matches = true;
        for_each_bit(nbhd, [&](std::size_t y) {
          const int a = section_at(g, img.carrier, y);
          if (a == kUndefined || g.r(static_cast<std::size_t>(a)) != action.apply(el, y)) matches = false;
        });
        some_element = matches;
      }
      locally_constant = some_element;
    });
    if (locally_constant) out.push_back(img.carrier);
  }
  const auto rep = check_selection_base(g, out);
  if (!rep.ok()) throw Error("ValidationFailed", "canonical family is not a selection base");
  return out;
}

std::vector<Mask> union_closure(std::span<const Mask> generators, std::size_t budget) {
  const auto gens = canonical_family(generators);
  std::unordered_set<Mask> seen{0};
  std::vector<Mask> out{0};
  for (std::size_t i = 0; i < out.size(); ++i) {
    const Mask x = out[i];
    for (Mask s : gens) {
      const Mask y = x | s;
      if (seen.insert(y).second) {
        if (out.size() >= budget)
          throw BudgetExceeded("SizeBudgetExceeded: union closure has more than " + std::to_string(budget) + " elements");
        out.push_back(y);
      }
    }
  }
  std::sort(out.begin(), out.end(), canonical_less);
  return out;
}

std::vector<Mask> union_closure_naive(std::span<const Mask> generators, std::size_t carrier_size) {
  if (carrier_size > 26) throw Error("TooLarge", "naive closure is limited to 26 arrows");
  std::vector<Mask> out;
  for (Mask x = 0; x < (Mask{1} << carrier_size); ++x) {
    Mask acc = 0;
    for (Mask s : generators)
      if (is_subset(s, x)) acc |= s;
    if (acc == x) out.push_back(x);
  }
  std::sort(out.begin(), out.end(), canonical_less);
  return out;
}

GroupoidQuantale build_gq(const SelectionBase& base, std::size_t budget) {
  const auto elements = union_closure(base.carriers(), budget);
  return {from_subset_family(base.groupoid(), elements), base};
}

RecoveryReport check_recovery(const GroupoidQuantale& gq) {
  const FiniteQuantale& q = gq.quantale;
  const FiniteGroupoid& g = gq.base.groupoid();
  const FiniteSpace& space = g.space();
  RecoveryReport rep;

  const PartialUnitSet pu = partial_units(q);
  std::vector<Mask> units;
  for (Index f : pu.partial_units) units.push_back(q.carrier(f));
  std::sort(units.begin(), units.end(), canonical_less);
  if (units != gq.base.carriers())
    rep.partial_units = Verdict::fail("|I(Q)| = " + std::to_string(units.size()) + " but the base has " +
                                      std::to_string(gq.base.members().size()) + " members");

  std::vector<Mask> qe, opens;
  for (Index h : pu.qe) qe.push_back(q.carrier(h));
  for (Mask u : space.opens()) opens.push_back(g.unit_image(u));
  std::sort(qe.begin(), qe.end(), canonical_less);
  std::sort(opens.begin(), opens.end(), canonical_less);
  if (qe != opens) rep.qe_opens = Verdict::fail("Q_e has " + std::to_string(qe.size()) + " elements, the space " +
                                                std::to_string(opens.size()) + " opens");

  std::vector<Mask> primes, expected;
  for (Index p : primes_of_qe(q)) primes.push_back(q.carrier(p));
  for (std::size_t p = 0; p < space.size(); ++p) expected.push_back(g.unit_image(space.full() & ~space.closure_of(p)));
  std::sort(primes.begin(), primes.end(), canonical_less);
  std::sort(expected.begin(), expected.end(), canonical_less);
  expected.erase(std::unique(expected.begin(), expected.end()), expected.end());
  if (primes != expected) rep.primes = Verdict::fail("primes of Q_e differ from u[G0 \\ closure(p)]");
  return rep;
}

Verdict is_topological_base(const SelectionBase& base) {
  const auto fam = base.carriers();
  const FiniteGroupoid& g = base.groupoid();
  for (std::size_t i = 0; i < fam.size(); ++i)
    for (std::size_t j = i + 1; j < fam.size(); ++j) {
      const Mask meet = fam[i] & fam[j];
      Mask covered = 0;
      for (Mask w : fam)
        if (is_subset(w, meet)) covered |= w;
      if (covered != meet) {
        const std::size_t x = static_cast<std::size_t>(std::countr_zero(meet & ~covered));
        return Verdict::fail(g.arrow_name(x) + " in " + g.format(fam[i]) + " ∩ " + g.format(fam[j]));
      }
    }
  return Verdict::pass();
}

}  // namespace gqtk
