#include "mlat/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "mlat/classify.hpp"
#include "mlat/constructors.hpp"
#include "mlat/localize.hpp"
#include "mlat/natsemiring.hpp"
#include "mlat/verify.hpp"

namespace mlat::cli {

namespace {

using Json = nlohmann::ordered_json;

struct Entry {
  std::string name;
  CheckStatus status = CheckStatus::Pass;
  Json witness = Json::object();
};

struct RunReport {
  std::vector<std::string> command;
  std::vector<Entry> entries;

  void add(std::string name, CheckStatus status, Json witness = Json::object()) {
    entries.push_back({std::move(name), status, std::move(witness)});
  }

  std::size_t count(CheckStatus s) const {
    return static_cast<std::size_t>(std::count_if(
        entries.begin(), entries.end(), [s](const Entry& e) { return e.status == s; }));
  }

  int exit_code() const {
    return count(CheckStatus::Fail) + count(CheckStatus::Exhibit) > 0 ? kFound : kOk;
  }

  Json to_json() const {
    Json j;
    j["schema"] = kReportSchema;
    j["tool_version"] = kToolVersion;
    j["command"] = command;
    Json list = Json::array();
    for (const auto& e : entries) {
      list.push_back({{"name", e.name}, {"status", to_string(e.status)}, {"witness", e.witness}});
    }
    j["entries"] = std::move(list);
    j["summary"] = {{"pass", count(CheckStatus::Pass)},
                    {"fail", count(CheckStatus::Fail)},
                    {"skip", count(CheckStatus::Skip)},
                    {"exhibit", count(CheckStatus::Exhibit)}};
    return j;
  }

  void print_text(std::ostream& out, bool color) const {
    for (const auto& e : entries) {
      std::string tag = to_string(e.status);
      for (auto& ch : tag) ch = static_cast<char>(std::toupper(ch));
      if (color) {
        const char* code = e.status == CheckStatus::Pass   ? "32"
                           : e.status == CheckStatus::Fail ? "31"
                           : e.status == CheckStatus::Skip ? "33"
                                                           : "36";
        tag = std::string("\x1b[") + code + "m" + tag + "\x1b[0m";
      }
      out << tag << "  " << e.name;
      if (!e.witness.empty()) out << "  " << e.witness.dump();
      out << "\n";
    }
    out << "summary: " << count(CheckStatus::Pass) << " pass, "
        << count(CheckStatus::Fail) << " fail, " << count(CheckStatus::Skip)
        << " skip, " << count(CheckStatus::Exhibit) << " exhibit\n";
  }
};

struct Globals {
  std::string format = "text";
  std::size_t budget = std::size_t{1} << 16;
  std::uint64_t seed = ValidateOptions{}.seed;
};

Json names(const Lattice& L, std::span<const Element> elems) {
  Json j = Json::array();
  for (Element e : elems) j.push_back(L.label(e));
  return j;
}

Json maybe_name(const Lattice& L, const std::optional<Element>& e) {
  return e ? Json(L.label(*e)) : Json(nullptr);
}

Json pair_names(const Lattice& L, const std::optional<std::pair<Element, Element>>& p) {
  if (!p) return nullptr;
  return Json::array({L.label(p->first), L.label(p->second)});
}

Json ideal_json(const nat::NatIdeal& I) { return I.generators(); }

Lattice load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_lattice(buf.str());
}

// Adds one failing entry per violated axiom; true when the lattice is valid.
bool add_validation(RunReport& report, const Lattice& L, const Globals& g,
                    bool report_passes) {
  ValidateOptions opts;
  opts.seed = g.seed;
  const ValidationReport v = validate(L, opts);
  if (report_passes) {
    for (std::string_view axiom : axiom_names()) {
      auto it = std::find_if(v.failures.begin(), v.failures.end(),
                             [&](const AxiomFailure& f) { return f.axiom == axiom; });
      if (it == v.failures.end()) {
        report.add("axiom " + std::string(axiom), CheckStatus::Pass);
      } else {
        report.add("axiom " + std::string(axiom), CheckStatus::Fail,
                   {{"witness", it->witness_names}});
      }
    }
  } else {
    for (const auto& f : v.failures) {
      report.add("axiom " + f.axiom, CheckStatus::Fail, {{"witness", f.witness_names}});
    }
  }
  return v.passed();
}

Json theorem_row_json(const Lattice& L, const TheoremRow& row) {
  return {{"element", L.label(row.q)},
          {"cancellation", row.lhs},
          {"locally_principal_regular", row.rhs},
          {"cancellation_witness", pair_names(L, row.cancellation_witness)},
          {"failing_maximal", maybe_name(L, row.failing_maximal)},
          {"failing_reason", row.failing_reason}};
}

Json hypotheses_json(const Hypotheses& h) {
  return {{"modular", h.modular},
          {"principals_generate", h.principals_generate},
          {"delta", to_string(h.delta)}};
}

void add_theorem(RunReport& report, const Lattice& L, const Globals& g) {
  const TheoremReport t = verify_theorem(L, DeltaOptions{g.budget});
  report.add("hypotheses", t.hypotheses.hold() ? CheckStatus::Pass : CheckStatus::Exhibit,
             hypotheses_json(t.hypotheses));
  for (const auto& row : t.rows) {
    CheckStatus s = CheckStatus::Pass;
    if (row.rhs && !row.lhs) {
      s = CheckStatus::Fail;
    } else if (row.lhs != row.rhs) {
      s = t.hypotheses.hold() ? CheckStatus::Fail : CheckStatus::Exhibit;
    }
    report.add("equivalence " + L.label(row.q), s, theorem_row_json(L, row));
  }
  report.add("cancellation-set", CheckStatus::Pass,
             {{"elements", names(L, t.cancellation_set())},
              {"mismatches", names(L, t.mismatches)},
              {"converse_violations", names(L, t.converse_violations)}});
}

void add_theorem_summary(RunReport& report, const CorpusEntry& entry, const Globals& g) {
  const Lattice& L = entry.lattice;
  if (!add_validation(report, L, g, false)) return;
  const TheoremReport t = verify_theorem(L, DeltaOptions{g.budget});
  CheckStatus s = CheckStatus::Pass;
  if (t.failed()) {
    s = CheckStatus::Fail;
  } else if (!t.hypotheses.hold()) {
    s = CheckStatus::Exhibit;
  }
  report.add("theorem " + L.name(), s,
             {{"call", entry.call},
              {"hypotheses", hypotheses_json(t.hypotheses)},
              {"cancellation_set", names(L, t.cancellation_set())},
              {"mismatches", names(L, t.mismatches)},
              {"converse_violations", names(L, t.converse_violations)}});
}

void cmd_classify(RunReport& report, const Lattice& L) {
  const Spectrum spec = classify_spectrum(L);
  Json above = Json::object();
  for (Element a = 0; a < L.size(); ++a) {
    if (spec.maximal_above[a]) above[L.label(a)] = L.label(*spec.maximal_above[a]);
  }
  report.add("spectrum", CheckStatus::Pass,
             {{"primes", names(L, spec.primes)},
              {"maximals", names(L, spec.maximals)},
              {"maximal_above", above}});
  for (const auto& p : profile_all(L)) {
    report.add("element " + L.label(p.element), CheckStatus::Pass,
               {{"meet_principal", p.is_meet_principal},
                {"join_principal", p.is_join_principal},
                {"principal", p.is_principal},
                {"prime", p.is_prime},
                {"maximal", p.is_maximal},
                {"regular", p.is_regular ? Json(*p.is_regular) : Json("undefined")},
                {"cancellation", p.is_cancellation},
                {"cancellation_witness", pair_names(L, p.cancellation_witness)}});
  }
}

void cmd_localize(RunReport& report, const Lattice& L, const std::string& prime,
                  const std::string& out_path) {
  const LocalizationResult r = localize_at_prime(L, L.find(prime));
  Json project = Json::object();
  for (Element a = 0; a < L.size(); ++a) {
    project[L.label(a)] = r.localized.label(r.image(a));
  }
  report.add("localization", CheckStatus::Pass,
             {{"name", r.localized.name()},
              {"carrier", r.localized.labels()},
              {"bottom", r.localized.label(r.localized.bottom())},
              {"top", r.localized.label(r.localized.top())},
              {"project", project}});
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) throw InputError("cannot write '" + out_path + "'");
    out << serialize_lattice(r.localized);
  }
}

void cmd_delta(RunReport& report, const Lattice& L, const Globals& g) {
  const DeltaSearch d = find_delta(L, DeltaOptions{g.budget});
  Json w = {{"status", to_string(d.status)},
            {"phase", d.phase},
            {"subsets_examined", d.subsets_examined}};
  if (d.certificate) {
    w["delta_set"] = names(L, d.certificate->delta_set);
    Json pairs = Json::array();
    for (const auto& [xy, delta] : d.certificate->witness) {
      pairs.push_back({L.label(xy.first), L.label(xy.second), L.label(delta)});
    }
    w["witness"] = std::move(pairs);
  }
  const CheckStatus s = d.status == DeltaStatus::Found      ? CheckStatus::Pass
                        : d.status == DeltaStatus::NotFound ? CheckStatus::Exhibit
                                                            : CheckStatus::Skip;
  report.add("delta", s, std::move(w));
}

void cmd_lemmas(RunReport& report, const Lattice& L, const Globals& g) {
  for (const auto& c : lemma_suite(L, DeltaOptions{g.budget}).checks) {
    Json violations = Json::array();
    for (const auto& v : c.violations) violations.push_back(names(L, v));
    report.add(c.name, c.status(),
               {{"hypotheses_hold", c.hypotheses_hold},
                {"instances", c.instances},
                {"violation_count", c.violation_count},
                {"violations", std::move(violations)},
                {"note", c.note}});
  }
}

void cmd_nat_refute(RunReport& report, const std::string& gens) {
  const nat::NatIdeal q = nat::parse_ideal(gens);
  const auto r = nat::nat_refute_cancellation(q);
  if (!r) {
    report.add("nat-refute " + q.to_string(), CheckStatus::Pass,
               {{"ideal", ideal_json(q)}, {"principal", true}});
    return;
  }
  report.add("nat-refute " + q.to_string(), CheckStatus::Exhibit,
             {{"ideal", ideal_json(q)},
              {"a", r->a},
              {"b", r->b},
              {"h", r->h},
              {"j", ideal_json(r->j)},
              {"witness", r->witness},
              {"witness_in_q_squared", true},
              {"witness_in_j", false},
              {"q_cubed_equals_qj", true}});
}

void cmd_nat_delta(RunReport& report, nat::Value x, nat::Value y) {
  const auto c = nat::nat_delta_witness_search(x, y);
  const nat::Value bound = std::max(x * x, y * y);
  const std::string name = "nat-delta " + std::to_string(x) + " " + std::to_string(y);
  if (c) {
    report.add(name, CheckStatus::Pass, {{"c", *c}, {"searched_up_to", bound}});
  } else {
    report.add(name, CheckStatus::Exhibit, {{"c", nullptr}, {"searched_up_to", bound}});
  }
}

void cmd_nat_modularity(RunReport& report, nat::Value bound) {
  const auto v = nat::nat_modularity_witness(bound);
  const std::string name = "nat-modularity bound " + std::to_string(bound);
  if (!v) {
    report.add(name, CheckStatus::Pass, {{"violation", nullptr}});
    return;
  }
  report.add(name, CheckStatus::Exhibit,
             {{"a", ideal_json(v->a)},
              {"b", ideal_json(v->b)},
              {"c", ideal_json(v->c)},
              {"lhs", ideal_json(nat::nat_meet(v->a, nat::nat_join(v->b, v->c)))},
              {"rhs", ideal_json(nat::nat_join(v->b, nat::nat_meet(v->a, v->c)))}});
}

void cmd_corpus(RunReport& report, std::uint64_t zn_max, const std::string& out_dir,
                const Globals& g) {
  const auto corpus = build_corpus(zn_max);
  if (!out_dir.empty()) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    for (std::size_t i = 0; i < corpus.size(); ++i) {
      std::ofstream out(fs::path(out_dir) / ("lattice_" + std::to_string(i) + ".json"));
      if (!out) throw InputError("cannot write into '" + out_dir + "'");
      out << serialize_lattice(corpus[i].lattice);
    }
    std::ofstream manifest(fs::path(out_dir) / "manifest.json");
    manifest << corpus_manifest(corpus);
  }
  for (const auto& entry : corpus) add_theorem_summary(report, entry, g);
}

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err,
        bool color) {
  CLI::App app{"Finite multiplicative lattice verification laboratory", "mlat"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--format", g.format, "Output format")
      ->check(CLI::IsMember({"text", "json"}));
  app.add_option("--budget", g.budget, "Subset budget for the delta search");
  app.add_option("--seed", g.seed, "Seed for randomized spot-checks");

  std::string file, prime, gens, out_path;
  std::uint64_t zn = 0, zn_max = 500, bound = 12, x = 0, y = 0;
  bool corpus_flag = false;

  auto* validate_cmd = app.add_subcommand("validate", "Check lattice axioms");
  validate_cmd->add_option("FILE", file)->required();
  auto* classify_cmd = app.add_subcommand("classify", "Classify every element");
  classify_cmd->add_option("FILE", file)->required();
  auto* localize_cmd = app.add_subcommand("localize", "Localize at a prime element");
  localize_cmd->add_option("FILE", file)->required();
  localize_cmd->add_option("--prime", prime, "Label of the prime")->required();
  localize_cmd->add_option("--out", out_path, "Write the localized lattice here");
  auto* theorem_cmd = app.add_subcommand("theorem", "Check the cancellation theorem");
  theorem_cmd->add_option("FILE", file);
  theorem_cmd->add_option("--zn", zn, "Use the ideal lattice of Z_N");
  theorem_cmd->add_flag("--corpus", corpus_flag, "Sweep the whole corpus");
  auto* delta_cmd = app.add_subcommand("delta", "Search for a delta generating set");
  delta_cmd->add_option("FILE", file)->required();
  auto* lemmas_cmd = app.add_subcommand("lemmas", "Run the lemma and corollary suite");
  lemmas_cmd->add_option("FILE", file)->required();
  auto* refute_cmd = app.add_subcommand("nat-refute", "Refute cancellation of an ideal of N");
  refute_cmd->add_option("GENS", gens, "Comma-separated generators")->required();
  auto* nat_delta_cmd = app.add_subcommand("nat-delta", "Search for a delta witness in N");
  nat_delta_cmd->add_option("X", x)->required();
  nat_delta_cmd->add_option("Y", y)->required();
  auto* nat_mod_cmd = app.add_subcommand("nat-modularity", "Search for a modularity violation in N");
  nat_mod_cmd->add_option("--bound", bound)->required();
  auto* corpus_cmd = app.add_subcommand("corpus", "Sweep the corpus");
  corpus_cmd->add_option("--zn-max", zn_max)->required();
  corpus_cmd->add_option("--out", out_path, "Write lattice files and a manifest here");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "mlat: " << e.what() << "\n" << app.help();
    return kInputError;
  }

  RunReport report;
  report.command.assign(args.begin(), args.end());
  try {
    auto* sub = app.get_subcommands().front();
    if (sub == validate_cmd) {
      add_validation(report, load_file(file), g, true);
    } else if (sub == theorem_cmd) {
      const int sources = (!file.empty()) + (zn != 0) + corpus_flag;
      if (sources != 1) {
        throw InputError("theorem needs exactly one of FILE, --zn N, --corpus");
      }
      if (corpus_flag) {
        for (const auto& entry : build_corpus()) add_theorem_summary(report, entry, g);
      } else {
        const Lattice L = zn != 0 ? zn_ideal_lattice(zn) : load_file(file);
        if (add_validation(report, L, g, false)) add_theorem(report, L, g);
      }
    } else if (sub == refute_cmd) {
      cmd_nat_refute(report, gens);
    } else if (sub == nat_delta_cmd) {
      if (x == 0 || y == 0) throw InputError("nat-delta needs X, Y >= 1");
      cmd_nat_delta(report, x, y);
    } else if (sub == nat_mod_cmd) {
      if (bound == 0) throw InputError("--bound must be at least 1");
      cmd_nat_modularity(report, bound);
    } else if (sub == corpus_cmd) {
      cmd_corpus(report, zn_max, out_path, g);
    } else {
      const Lattice L = load_file(file);
      if (add_validation(report, L, g, false)) {
        if (sub == classify_cmd) cmd_classify(report, L);
        if (sub == localize_cmd) cmd_localize(report, L, prime, out_path);
        if (sub == delta_cmd) cmd_delta(report, L, g);
        if (sub == lemmas_cmd) cmd_lemmas(report, L, g);
      }
    }
  } catch (const InputError& e) {
    err << "mlat: " << e.what() << "\n";
    return kInputError;
  } catch (const std::overflow_error& e) {
    err << "mlat: " << e.what() << "\n";
    return kInputError;
  } catch (const InternalContradiction& e) {
    err << "mlat: internal contradiction: " << e.what() << "\n";
    return kFound;
  }

  if (g.format == "json") {
    out << report.to_json().dump(2) << "\n";
  } else {
    report.print_text(out, color);
  }
  return report.exit_code();
}

}  // namespace mlat::cli
