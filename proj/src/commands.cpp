#include "gqtk/commands.hpp"

#include <cstdio>
#include <sstream>

#include "gqtk/incidence.hpp"
#include "gqtk/iso.hpp"

namespace gqtk {

namespace {

class Checks {
 public:
  void add(const std::string& name, const Verdict& v) { add(name, v.holds, v.witness); }
  void add(const std::string& name, bool ok, const std::string& witness = {}) {
    Json c = {{"name", name}, {"pass", ok}};
    if (!ok && !witness.empty()) c["witness"] = witness;
    list_.push_back(std::move(c));
    ok_ = ok_ && ok;
  }
  bool ok() const { return ok_; }
  const Json& json() const { return list_; }

 private:
  Json list_ = Json::array();
  bool ok_ = true;
};

Report finish(const std::string& command, const Json& input, const Checks& checks, Json properties) {
  Report r;
  r.body = {{"command", command}, {"input_digest", digest(input)}, {"ok", checks.ok()}, {"checks", checks.json()}};
  for (auto it = properties.begin(); it != properties.end(); ++it) r.body[it.key()] = it.value();
  r.exit_code = checks.ok() ? kExitPass : kExitCheckFailure;
  return r;
}

Json names_of(const FiniteSpace& s, Mask m) {
  Json out = Json::array();
  for_each_bit(m, [&](std::size_t p) { out.push_back(s.name(p)); });
  return out;
}

bool is_quantale_doc(const Json& doc) { return doc.is_object() && doc.contains("n") && doc.contains("product"); }

void add_axiom_checks(Checks& checks, const FiniteQuantale& q, const RunOptions& opts) {
  for (const auto& c : check_quantale_axioms(q, {opts.verify_oracles}).checks) checks.add(c.axiom, c.verdict);
}

std::string etale_text(const EtaleResult& e) { return e.skipped ? "skipped" : e.verdict.holds ? "pass" : "fail"; }

// Arrow named in an is_topological_base witness ("(p0,p0) in S ∩ T").
std::string witness_arrow(const std::string& w) { return w.substr(0, w.find(" in ")); }

// Summary and checks shared by build-gq and the fixtures.
Json gq_summary(const GroupoidQuantale& gq, Checks& checks, const RunOptions& opts) {
  const FiniteQuantale& q = gq.quantale;
  add_axiom_checks(checks, q, opts);
  checks.add("SG", check_sg(q));
  const SgfReport sgf = check_sgf(q);
  checks.add("SGF1", sgf.sgf1);
  checks.add("SGF2", sgf.sgf2);
  checks.add("SGF3", sgf.sgf3);
  const RecoveryReport rec = check_recovery(gq);
  checks.add("recovery: I(Q) = S", rec.partial_units);
  checks.add("recovery: Q_e = {u[U]}", rec.qe_opens);
  checks.add("recovery: primes = u[G0 \\ closure(p)]", rec.primes);
  const PartialUnitSet pu = partial_units(q);
  Json summary = {{"elements", q.size()},
                  {"partial_units", pu.partial_units.size()},
                  {"qe", pu.qe.size()},
                  {"primes", primes_of_qe(q).size()}};
  if (sgf.all()) {
    const IncidenceAnalysis an(q);
    const SpatialReport sp = an.check_spatial();
    checks.add("SPQ1", sp.spq1);
    checks.add("SPQ2", sp.spq2);
    summary["spq2_empty_meets"] = sp.empty_meets.size();
    const EtaleResult et = check_etale_lemma(an);
    summary["etale_lemma"] = etale_text(et);
  }
  const InverseQuantalFrameReport iqf = check_inverse_quantal_frame(q);
  const Verdict top = is_topological_base(gq.base);
  summary["distributive"] = iqf.distributive.holds;
  summary["topological_base"] = top.holds;
  if (!top.holds) summary["topological_base_witness"] = top.witness;
  summary["inverse_quantal_frame"] = iqf.holds();
  summary["etale_classification"] = iqf.holds() ? "inverse quantal frame" : "not an inverse quantal frame";
  return summary;
}

FiniteQuantale quantale_of(const Json& doc, const RunOptions& opts, Checks& checks, Json& props) {
  if (is_quantale_doc(doc)) {
    FiniteQuantale q = quantale_from_data(parse_quantale(doc));
    add_axiom_checks(checks, q, opts);
    return q;
  }
  const BaseInput in = parse_base(doc);
  const SelectionBase base = validate_selection_base(in.groupoid.groupoid, in.family, {opts.verify_oracles});
  GroupoidQuantale gq = build_gq(base, opts.budget);
  props["built_from_base"] = {{"members", base.members().size()}, {"elements", gq.quantale.size()}};
  return std::move(gq.quantale);
}

Json certificate(const QuantaleIso& iso) { return iso.map; }
Json certificate(const GroupoidIso& iso) { return {{"points", iso.points}, {"arrows", iso.arrows}}; }

Json roundtrip_json(const RoundTripReport& r) {
  Json j = {{"ok", r.ok}};
  if (!r.ok) {
    j["stage"] = r.stage;
    j["detail"] = r.detail;
  }
  if (r.quantale_iso) j["certificate"] = certificate(*r.quantale_iso);
  if (r.groupoid_iso) j["certificate"] = certificate(*r.groupoid_iso);
  return j;
}

void flatten(const Json& j, const std::string& prefix, std::ostringstream& out) {
  if (j.is_object() && !j.empty()) {
    for (auto it = j.begin(); it != j.end(); ++it) flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
    return;
  }
  out << prefix << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
}

}  // namespace

std::string digest(const Json& doc) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : doc.dump()) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Report cmd_check(const Json& doc, const std::string& kind, const RunOptions& opts) {
  Checks checks;
  Json props = Json::object();
  if (kind == "space") {
    const FiniteSpace s = parse_space(doc);
    checks.add("space", true);
    const SobrietyResult sob = is_sober(s);
    checks.add("sober", sob.sober, sob.offending ? "irreducible closed set " + s.format(sob.offending->carrier) : "");
    props = {{"points", s.size()}, {"opens", s.opens().size()}, {"sober", sob.sober}, {"t0", is_t0(s)}, {"t1", is_t1(s)}};
    if (sob.sober) {
      Json primes = Json::object();
      for (const auto& p : prime_opens(s)) primes[s.name(p.point)] = names_of(s, p.open);
      props["prime_opens"] = primes;
    }
  } else if (kind == "groupoid") {
    const GroupoidInput in = parse_groupoid(doc);
    const FiniteGroupoid& g = in.groupoid;
    checks.add("space", true);
    checks.add("G2-G5", true);
    const SobrietyResult sob = is_sober(g.space());
    checks.add("sober units", sob.sober);
    std::vector<Mask> images;
    for (const auto& b : enumerate_bisection_images(g)) images.push_back(b.carrier);
    props = {{"points", g.space().size()}, {"arrows", g.arrow_count()}, {"bisection_images", images.size()},
             {"sp", is_sp(g, images)}};
  } else if (kind == "quantale") {
    const FiniteQuantale q = quantale_from_data(parse_quantale(doc));
    checks.add("lattice", true);
    add_axiom_checks(checks, q, opts);
    props = {{"elements", q.size()}};
    if (checks.ok()) {
      const SgfReport sgf = check_sgf(q);
      props["sg"] = check_sg(q).holds;
      props["sgf1"] = sgf.sgf1.holds;
      props["sgf2"] = sgf.sgf2.holds;
      props["sgf3"] = sgf.sgf3.holds;
      props["partial_units"] = partial_units(q).partial_units.size();
      props["distributive"] = is_distributive_lattice(q).holds;
      props["inverse_quantal_frame"] = check_inverse_quantal_frame(q).holds();
      if (sgf.all()) {
        const SpatialReport sp = IncidenceAnalysis(q).check_spatial();
        props["spq1"] = sp.spq1.holds;
        props["spq2"] = sp.spq2.holds;
      }
    }
  } else if (kind == "base") {
    const BaseInput in = parse_base(doc);
    const SelectionBaseReport rep = check_selection_base(in.groupoid.groupoid, in.family, {opts.verify_oracles});
    checks.add("bisection images", rep.members);
    for (std::size_t i = 0; i < rep.sb.size(); ++i) checks.add("SB" + std::to_string(i + 1), rep.sb[i]);
    std::vector<Mask> distinct = in.family;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    props = {{"selector", in.selector}, {"listed_members", in.family.size()}, {"distinct_members", distinct.size()}};
    if (rep.ok()) {
      const SelectionBase base = validate_selection_base(in.groupoid.groupoid, in.family);
      const Verdict top = is_topological_base(base);
      props["topological_base"] = top.holds;
      if (!top.holds) props["topological_base_witness"] = top.witness;
    }
  } else {
    throw InputError("UnknownKind", "kind must be space, groupoid, quantale or base");
  }
  Json p = {{"kind", kind}};
  p.update(props);
  return finish("check", doc, checks, p);
}

Report cmd_build_gq(const Json& doc, const RunOptions& opts) {
  Checks checks;
  const BaseInput in = parse_base(doc);
  const SelectionBase base = validate_selection_base(in.groupoid.groupoid, in.family, {opts.verify_oracles});
  const GroupoidQuantale gq = build_gq(base, opts.budget);
  Json props = {{"base", {{"selector", in.selector}, {"members", base.members().size()}}}};
  props["quantale"] = gq_summary(gq, checks, opts);
  return finish("build-gq", doc, checks, props);
}

Report cmd_reconstruct(const Json& doc, const RunOptions& opts) {
  Checks checks;
  Json props = Json::object();
  const FiniteQuantale q = quantale_of(doc, opts, checks, props);
  const SgfReport sgf = check_sgf(q);
  checks.add("SGF1", sgf.sgf1);
  checks.add("SGF2", sgf.sgf2);
  checks.add("SGF3", sgf.sgf3);
  if (!checks.ok()) return finish("reconstruct", doc, checks, props);
  const IncidenceAnalysis an(q);
  const SpatialReport sp = an.check_spatial();
  checks.add("SPQ1", sp.spq1);
  checks.add("SPQ2", sp.spq2);
  props["primes"] = an.primes().size();
  props["pairs"] = an.pairs().size();
  props["classes"] = an.classes().size();
  props["spq1"] = sp.spq1.holds;
  props["spq2"] = sp.spq2.holds;
  const ReconstructedGroupoid& rec = an.groupoid();
  const AlphaReport alpha = an.check_alpha_theorem();
  checks.add("alpha: joins", alpha.joins);
  checks.add("alpha: embedding", alpha.embedding);
  checks.add("alpha: product", alpha.product);
  checks.add("alpha: involution", alpha.involution);
  checks.add("alpha: units", alpha.units);
  props["alpha_embedding"] = alpha.ok();
  Json point_prime = Json::object();
  for (std::size_t p = 0; p < rec.point_prime.size(); ++p)
    point_prime[rec.groupoid.space().name(p)] = element_name(q, rec.point_prime[p]);
  props["point_prime"] = point_prime;
  props["groupoid"] = groupoid_to_json(rec.groupoid);
  return finish("reconstruct", doc, checks, props);
}

Report cmd_roundtrip(const Json& doc, const RunOptions& opts) {
  Checks checks;
  Json rt = Json::object();
  if (is_quantale_doc(doc)) {
    const FiniteQuantale q = quantale_from_data(parse_quantale(doc));
    const RoundTripReport r = roundtrip_quantale(q, opts.budget);
    checks.add("quantale round trip", r.ok, r.stage + ": " + r.detail);
    rt = {{"quantale_iso", r.ok}, {"groupoid_iso", nullptr}, {"quantale", roundtrip_json(r)}};
  } else {
    const BaseInput in = parse_base(doc);
    const SelectionBase base = validate_selection_base(in.groupoid.groupoid, in.family, {opts.verify_oracles});
    const RoundTripReport g = roundtrip_groupoid(base, opts.budget);
    const RoundTripReport q = roundtrip_quantale(build_gq(base, opts.budget).quantale, opts.budget);
    checks.add("groupoid round trip", g.ok, g.stage + ": " + g.detail);
    checks.add("quantale round trip", q.ok, q.stage + ": " + q.detail);
    rt = {{"quantale_iso", q.ok}, {"groupoid_iso", g.ok}, {"quantale", roundtrip_json(q)}, {"groupoid", roundtrip_json(g)}};
  }
  return finish("roundtrip", doc, checks, {{"roundtrip", rt}});
}

Json fixture_facts(const Fixture& fixture, const RunOptions& opts) {
  const Json& doc = fixture.doc;
  Json facts = Json::object();
  const FiniteSpace space = parse_space(doc.at("space"));
  const SobrietyResult sob = is_sober(space);
  facts["sober"] = sob.sober;
  facts["t1"] = is_t1(space);
  Json primes = Json::object();
  for (const auto& p : prime_opens(space)) primes[space.name(p.point)] = names_of(space, p.open);
  facts["prime_opens"] = primes;

  const BaseInput in = parse_base(doc);
  const FiniteGroupoid& g = in.groupoid.groupoid;
  {
    Json rel_doc = {{"space", doc.at("space")}, {"relation", doc.at("relation")}};
    const FiniteGroupoid rel = parse_groupoid(rel_doc).groupoid;
    facts["relation_matches_action"] = rel.arrows() == g.arrows() && rel.data().d == g.data().d && rel.data().r == g.data().r;
  }
  const SelectionBase base = validate_selection_base(g, in.family, {opts.verify_oracles});
  facts["listed_members"] = doc.at("base_listing").size();
  facts["distinct_members"] = base.members().size();
  facts["canonical_base_matches_listing"] = canonical_base_from_action(*in.groupoid.action, g) == base.carriers();

  const GroupoidQuantale gq = build_gq(base, opts.budget);
  const FiniteQuantale& q = gq.quantale;
  facts["quantale_size"] = q.size();
  facts["quantale_axioms"] = check_quantale_axioms(q, {opts.verify_oracles}).ok();
  facts["sg"] = check_sg(q).holds;
  facts["sgf"] = check_sgf(q).all();
  facts["recovery"] = check_recovery(gq).ok();
  facts["qe_size"] = partial_units(q).qe.size();
  const IncidenceAnalysis an(q);
  facts["primes"] = an.primes().size();
  facts["classes"] = an.classes().size();
  facts["reconstructed_units"] = an.groupoid().groupoid.space().size();
  facts["spatial"] = an.check_spatial().ok();
  facts["alpha_theorem"] = an.check_alpha_theorem().ok();
  facts["distributive"] = is_distributive_lattice(q).holds;
  const Verdict top = is_topological_base(base);
  facts["topological_base"] = top.holds;
  if (!top.holds) facts["topological_base_witness"] = witness_arrow(top.witness);
  facts["inverse_quantal_frame"] = check_inverse_quantal_frame(q).holds();
  facts["etale_lemma"] = etale_text(check_etale_lemma(an));

  auto member = [&](const std::string& name) -> Index {
    for (const auto& m : doc.at("base_listing"))
      if (m.at("name") == name) {
        Mask s = 0;
        for (const auto& ref : m.at("arrows")) s |= bit(parse_arrow_ref(g, ref));
        if (auto i = q.find(s)) return *i;
      }
    throw InputError("UnknownMember", name);
  };
  auto prime_of = [&](const std::string& point) -> Index {
    const std::size_t p = space.index_of(point);
    return *q.find(g.unit_image(space.full() & ~space.closure_of(p)));
  };
  const Json& golden = doc.at("golden");
  if (golden.contains("incidence")) {
    Json out = Json::array();
    for (const auto& e : golden.at("incidence")) {
      const bool inc = an.incident(prime_of(e.at("prime_of")), member(e.at("f")), member(e.at("g")));
      out.push_back({{"prime_of", e.at("prime_of")}, {"f", e.at("f")}, {"g", e.at("g")}, {"incident", inc}});
    }
    facts["incidence"] = out;
  }
  if (golden.contains("transport")) {
    Json out = Json::array();
    for (const auto& e : golden.at("transport")) {
      const Index to = an.transport(prime_of(e.at("prime_of")), member(e.at("f")));
      std::string point = "?";
      for (std::size_t p = 0; p < space.size(); ++p)
        if (prime_of(space.name(p)) == to) point = space.name(p);
      out.push_back({{"prime_of", e.at("prime_of")}, {"f", e.at("f")}, {"to", point}});
    }
    facts["transport"] = out;
  }
  if (golden.contains("alpha_size")) {
    Json out = Json::object();
    for (auto it = golden.at("alpha_size").begin(); it != golden.at("alpha_size").end(); ++it)
      out[it.key()] = popcount(an.alpha(member(it.key())));
    facts["alpha_size"] = out;
  }
  facts["roundtrip_quantale"] = roundtrip_quantale(q, opts.budget).ok;
  facts["roundtrip_groupoid"] = roundtrip_groupoid(base, opts.budget).ok;
  return facts;
}

Report cmd_fixtures(const std::string& which, const RunOptions& opts) {
  std::vector<const Fixture*> chosen;
  if (which == "all")
    for (const auto& f : builtin_fixtures()) chosen.push_back(&f);
  else
    chosen.push_back(&find_fixture(which));
  Checks checks;
  Json results = Json::object();
  Json inputs = Json::array();
  for (const Fixture* f : chosen) {
    inputs.push_back(f->doc);
    const Json facts = fixture_facts(*f, opts);
    for (const char* key : {"relation_matches_action", "canonical_base_matches_listing", "quantale_axioms", "sg", "sgf",
                            "recovery", "spatial", "alpha_theorem"})
      checks.add(f->name + ": " + key, facts.at(key).get<bool>());
    const Json& golden = f->doc.at("golden");
    for (auto it = golden.begin(); it != golden.end(); ++it) {
      const bool same = facts.contains(it.key()) && facts.at(it.key()) == it.value();
      checks.add(f->name + ": golden " + it.key(), same,
                 "expected " + it.value().dump() + ", got " + (facts.contains(it.key()) ? facts.at(it.key()).dump() : "nothing"));
    }
    results[f->name] = facts;
  }
  return finish("fixtures", inputs, checks, {{"fixtures", results}});
}

Json search_table(const SearchResult& result) {
  std::map<std::string, std::vector<const Model*>> by_profile;
  for (const auto& m : result.models) by_profile[m.profile.key()].push_back(&m);
  Json profiles = Json::array();
  for (const auto& [key, models] : by_profile) {
    Json by_size = Json::object();
    for (const Model* m : models) {
      const std::string n = std::to_string(m->quantale.size());
      by_size[n] = by_size.value(n, 0) + 1;
    }
    profiles.push_back({{"profile", key}, {"count", models.size()}, {"by_size", by_size},
                        {"smallest", quantale_to_json(models.front()->quantale)}});
  }
  Json lattices = Json::object(), models = Json::object();
  for (auto [n, c] : result.lattices_by_size) lattices[std::to_string(n)] = c;
  for (auto [n, c] : result.models_by_size) models[std::to_string(n)] = c;
  return {{"complete", result.complete}, {"candidates", result.candidates}, {"lattices_by_size", lattices},
          {"models_by_size", models}, {"profiles", profiles}};
}

Report cmd_search(const SearchOptions& search, const RunOptions&) {
  const SearchResult res = search_models(search);
  Checks checks;
  checks.add("search complete within budget", res.complete, "budget of " + std::to_string(search.budget) + " exhausted");
  Verdict consequences;
  for (const auto& m : res.models)
    if (m.profile.sg)
      if (Verdict v = check_sg_consequences(m.quantale); !v.holds && consequences.holds) consequences = v;
  checks.add("SG models satisfy Q_e frame, ff* criterion, inverse monoid", consequences);
  const Json input = {{"max_size", search.max_size}, {"budget", search.budget}};
  Report r = finish("search", input, checks, {{"max_size", search.max_size}, {"table", search_table(res)}});
  if (!res.complete) r.exit_code = kExitBudget;
  return r;
}

Report run_guarded(const std::string& command, const std::function<Report()>& fn) {
  auto error_report = [&](const Error& e, int code) {
    Report r;
    r.body = {{"command", command}, {"ok", false}, {"error", {{"code", e.code()}, {"message", e.what()}}}};
    if (const auto* ve = dynamic_cast<const ValidationError*>(&e)) {
      Json checks = Json::array();
      for (const auto& v : ve->violations()) checks.push_back({{"name", v.code}, {"pass", false}, {"witness", v.witness}});
      r.body["checks"] = checks;
    }
    r.exit_code = code;
    return r;
  };
  try {
    return fn();
  } catch (const InputError& e) {
    return error_report(e, kExitInputError);
  } catch (const BudgetExceeded& e) {
    return error_report(e, kExitBudget);
  } catch (const Error& e) {
    return error_report(e, kExitCheckFailure);
  } catch (const nlohmann::json::exception& e) {
    return error_report(InputError("ParseError", e.what()), kExitInputError);
  }
}

std::string render_text(const Report& report) {
  std::ostringstream out;
  const Json& b = report.body;
  out << b.value("command", "") << ": " << (b.value("ok", false) ? "PASS" : "FAIL") << "\n";
  if (b.contains("error")) out << "error: " << b["error"].value("message", "") << "\n";
  if (b.contains("checks"))
    for (const auto& c : b["checks"]) {
      out << (c.value("pass", false) ? "  [pass] " : "  [FAIL] ") << c.value("name", "");
      if (c.contains("witness")) out << "  (" << c["witness"].get<std::string>() << ")";
      out << "\n";
    }
  Json rest = Json::object();
  for (auto it = b.begin(); it != b.end(); ++it)
    if (it.key() != "command" && it.key() != "ok" && it.key() != "checks" && it.key() != "error") rest[it.key()] = it.value();
  flatten(rest, "", out);
  return out.str();
}

}  // namespace gqtk
