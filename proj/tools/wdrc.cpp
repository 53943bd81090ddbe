// Command-line front end: verify single circulants, run the desk-scale
// classification over a range, build named family members and run the
// structural property suites.

#include <CLI11.hpp>
#include <iostream>

#include "wdrc/wdrc.hpp"

namespace {

using namespace wdrc;

std::optional<FamilyTag> match_family(const Circulant& c) {
  auto canon = canonical_certificate(c);
  for (const auto& [member, tag] : expected_one_type_family(c.n))
    if (canonical_certificate(member) == canon) return tag;
  return std::nullopt;
}

int run_check(const std::string& literal, bool as_json, bool show_scheme,
              bool show_sring, int delta) {
  Circulant c = parse_circulant(literal);
  WdrOutcome outcome = is_wdr(c);
  if (!outcome.ok()) {
    if (as_json)
      std::cout << to_json(*outcome.failure).dump(2) << "\n";
    else
      std::cout << "not weakly distance-regular: "
                << outcome.failure->to_string() << "\n";
    return 1;
  }
  const WdrCertificate& cert = *outcome.certificate;
  std::optional<FamilyTag> family;
  if (cert.one_type) family = match_family(c);
  if (as_json)
    std::cout << to_json(cert, family).dump(2) << "\n";
  else
    std::cout << format_certificate(cert, family);
  if (show_scheme) std::cout << format_scheme_report(cert.scheme);
  if (show_sring) {
    SchurOutcome so = is_schur_partition(cert.partition);
    const SchurPartition& sring = *so.sring;
    Subgroup rad = sring_radical(sring);
    std::cout << "sring rank=" << sring.rank() << " radical="
              << format_residue_set(rad.as_residue_set())
              << " free=" << (rad.is_trivial() ? 1 : 0) << "\n";
    std::cout << "a_subgroups";
    for (const auto& h : a_subgroups(sring))
      std::cout << ' ' << format_residue_set(h.as_residue_set());
    std::cout << "\n";
    MultiplierGroupInfo mg = multiplier_group(sring);
    std::cout << "multiplier_group {";
    for (size_t i = 0; i < mg.units.size(); ++i)
      std::cout << (i ? "," : "") << mg.units[i];
    std::cout << "} orbit_sring=" << (mg.is_orbit ? 1 : 0) << "\n";
  }
  if (delta > 0) {
    Circulant d = delta_q(cert, delta);
    std::cout << "delta_" << delta << " " << format_circulant(d) << "\n";
    std::cout << "delta_" << delta << "_wdr " << (is_wdr(d).ok() ? 1 : 0)
              << "\n";
    PureReport pure = check_pure(cert, delta);
    std::cout << "pure applicable=" << pure.applicable;
    if (pure.applicable)
      std::cout << " m=" << pure.fiber
                << " confirmed=" << pure.isomorphism_confirmed;
    std::cout << "\n";
    if (delta > 3) {
      PropQgt3Report pr = check_prop_q_gt_3(cert, delta);
      std::cout << "prop_q_gt_3 applicable=" << pr.applicable;
      if (pr.applicable)
        std::cout << " m=" << pr.circuit_length << " l=" << pr.fiber
                  << " confirmed=" << pr.isomorphism_confirmed;
      std::cout << "\n";
    } else if (delta == 3) {
      PropQ3Report pr = check_prop_q3(cert);
      std::cout << "prop_q3 applicable=" << pr.applicable << " match="
                << (pr.match ? pr.match->to_string() : std::string("-"))
                << "\n";
    }
  }
  return 0;
}

int run_classify(int n_min, int n_max, const EnumerationOptions& opts,
                 const std::string& cache_path, bool as_json) {
  SearchCache cache(cache_path);
  auto reports =
      verify_main2(n_min, n_max, opts, cache.enabled() ? &cache : nullptr);
  Main3Report main3 = verify_main3_from_reports(reports);

  bool all_pass = main3.exact;
  for (const auto& rep : reports)
    all_pass = all_pass && rep.verdict == "exact-match";

  if (as_json) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& rep : reports) j.push_back(to_json(rep));
    nlohmann::json root;
    root["reports"] = std::move(j);
    root["primitivity"] = to_json(main3);
    std::cout << root.dump(2) << "\n";
  } else {
    for (const auto& rep : reports) {
      std::cout << "n=" << rep.n << " verdict=" << rep.verdict
                << " found=" << rep.found.size()
                << " expected=" << rep.expected.size() << " [";
      bool first = true;
      for (const auto& f : rep.found) {
        std::cout << (first ? "" : ", ")
                  << (f.family ? f.family->to_string() : f.set);
        first = false;
      }
      std::cout << "]\n";
    }
    std::cout << "primitive survivors: " << main3.primitive_found.size()
              << " expected: " << main3.primitive_expected.size()
              << " exact=" << (main3.exact ? 1 : 0) << "\n";
    for (const auto& v : main3.violations)
      std::cout << "violation: " << v << "\n";
  }
  double total = 0;
  for (const auto& rep : reports) total += rep.elapsed_seconds;
  std::cerr << "classified n in [" << n_min << "," << n_max << "] in "
            << total << "s\n";
  return all_pass ? 0 : 1;
}

int run_props(const std::string& literal) {
  Circulant c = parse_circulant(literal);
  WdrOutcome outcome = is_wdr(c);
  if (!outcome.ok()) {
    std::cout << "not weakly distance-regular: "
              << outcome.failure->to_string() << "\n";
    return 1;
  }
  const WdrCertificate& cert = *outcome.certificate;
  bool ok = true;

  IdentityReport ids = check_identities(cert.scheme);
  std::cout << "intersection identities: "
            << (ids.all_pass() ? "pass" : "FAIL") << "\n";
  for (const auto& v : ids.violations)
    std::cout << "  identity (" << v.identity << ") violated at i=" << v.i
              << " j=" << v.j << " l=" << v.l << "\n";
  ok = ok && ids.all_pass();

  SchurOutcome so = is_schur_partition(cert.partition);
  const SchurPartition& sring = *so.sring;
  MultiplierClosureReport mc = multiplier_closure_check(sring);
  std::cout << "multiplier closure: " << (mc.all_pass() ? "pass" : "FAIL")
            << "\n";
  for (const auto& v : mc.violations)
    std::cout << "  unit " << v.unit << " does not map class "
              << v.class_index << " to a class\n";
  ok = ok && mc.all_pass();

  for (const auto& cls : sring.basic_sets()) {
    if (cls.contains(0) || !generated_subgroup(cls).is_full()) continue;
    DecompositionLemmaReport rep = verify_decomposition_lemmas(sring, cls);
    bool pass = rep.coset_union && rep.projection_product && rep.max_valency &&
                (!rep.inverse_condition_applicable ||
                 rep.inverse_condition_holds);
    std::cout << "decomposition lemmas on " << format_residue_set(cls) << ": "
              << (pass ? "pass" : "FAIL") << " (coset_union="
              << rep.coset_union << " projection=" << rep.projection_product
              << " max_valency=" << rep.max_valency << " inverse="
              << (rep.inverse_condition_applicable
                      ? (rep.inverse_condition_holds ? "holds" : "FAIL")
                      : "n/a")
              << ")\n";
    ok = ok && pass;
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"circulant scheme toolkit: weakly distance-regular "
               "verification and one-arc-type classification"};
  app.require_subcommand(1);

  std::string literal;
  bool as_json = false, show_scheme = false, show_sring = false;
  int delta = 0;
  auto* check = app.add_subcommand("check",
                                   "verify one circulant (literal n:a,b,c)");
  check->add_option("circulant", literal, "circulant literal, e.g. 13:1,3,9")
      ->required();
  check->add_flag("--json", as_json, "emit JSON");
  check->add_flag("--scheme", show_scheme, "print the attached scheme");
  check->add_flag("--sring", show_sring, "print S-ring data");
  check->add_option("--delta", delta, "print Delta_q analysis for this q");

  int n_min = 3, n_max = 14, jobs = 1;
  bool extended = false, no_reduction = false, classify_json = false;
  std::string cache_path;
  auto* classify = app.add_subcommand(
      "classify", "re-derive the classification over a range of moduli");
  classify->add_option("--n-min", n_min, "first modulus")->required();
  classify->add_option("--n-max", n_max, "last modulus")->required();
  classify->add_option("--jobs", jobs, "parallel workers");
  classify->add_option("--cache", cache_path, "append-only result cache file");
  classify->add_flag("--json", classify_json, "emit JSON reports");
  classify->add_flag("--extended", extended, "allow n up to 30");
  classify->add_flag("--no-reduction", no_reduction,
                     "disable multiplier-equivalence reduction");

  std::string tag_text;
  auto* construct =
      app.add_subcommand("construct", "print the literal of a family member");
  construct
      ->add_option("family", tag_text,
                   "family tag, e.g. C3xKh(h=4) or CycleLex(m=4,l=3)")
      ->required();

  std::string props_literal;
  auto* props = app.add_subcommand(
      "props", "run identity / multiplier / decomposition suites");
  props->add_option("circulant", props_literal, "circulant literal")
      ->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (check->parsed())
      return run_check(literal, as_json, show_scheme, show_sring, delta);
    if (classify->parsed()) {
      EnumerationOptions opts;
      opts.jobs = jobs;
      opts.multiplier_reduction = !no_reduction;
      opts.extended = extended;
      return run_classify(n_min, n_max, opts, cache_path, classify_json);
    }
    if (construct->parsed()) {
      std::cout << format_circulant(FamilyTag::parse(tag_text).build())
                << "\n";
      return 0;
    }
    if (props->parsed()) return run_props(props_literal);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
