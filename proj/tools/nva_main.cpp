/* nva — exact workbench for finite-dimensional nonassociative algebras.
 *
 * Subcommands:
 *   construct            recipe file -> canonical algebra file
 *   check                algebra + identity file -> per-identity verdicts
 *   probe-admissibility  presentation file -> least degree covering Lie products
 *   gate                 presentation file -> nonmatrix verdict over the bank
 *   analyze              algebra + analysis name -> nilpotence analyses
 *   replay               re-checks every witness recorded in a report
 *
 * Exit status separates health from verdicts: 0 means the run completed and
 * its findings (pass or fail) are in the report; nonzero means the tool
 * itself could not finish (unreadable input, invalid recipe, exceeded
 * budget, witness that no longer replays).
 */

#include <chrono>
#include <cstdio>
#include <exception>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nva/analysis.hpp"
#include "nva/gate.hpp"
#include "nva/io.hpp"
#include "nva/report.hpp"
#include "nva/variety.hpp"

namespace {

using nva::json;

// ---------------------------------------------------------------------------
// Rendering helpers
// ---------------------------------------------------------------------------

template <class F>
std::string element_str(const nva::Element<F>& u) {
  const auto& A = u.algebra();
  const auto& field = A->field();
  std::string out;
  for (std::uint32_t i = 0; i < A->dim(); ++i) {
    const auto& c = u.coords()[i];
    if (c.is_zero()) continue;
    if (!out.empty()) out += " + ";
    std::string cs = field.str(c);
    if (cs == "1")
      out += A->basis_names()[i];
    else
      out += cs + "*" + A->basis_names()[i];
  }
  return out.empty() ? "0" : out;
}

template <class F>
std::string assignment_str(const std::map<std::string, nva::Element<F>>& a) {
  std::string out;
  for (const auto& [var, val] : a) {
    if (!out.empty()) out += ", ";
    out += var + " = " + element_str(val);
  }
  return out;
}

template <class F>
void describe_witness(std::ostringstream& txt, const std::string& indent,
                      const nva::Counterexample<F>& w) {
  txt << indent << "component " << w.component << "\n";
  txt << indent << "at " << assignment_str(w.basis_assignment) << "\n";
  if (w.value) txt << indent << "value " << element_str(*w.value) << "\n";
  if (w.falsifies_original)
    txt << indent << "falsifies the identity as written at " << assignment_str(w.assignment)
        << "\n";
}

std::string yesno(bool b) { return b ? "yes" : "no"; }

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  std::int64_t ms() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

/* Writes either the structured report or the text rendering, to --out or
 * stdout. */
void emit(const json& rep, const std::string& text, const std::string& format,
          const std::string& out_path) {
  const std::string payload = format == "structured" ? rep.dump(2) + "\n" : text;
  if (out_path.empty())
    std::fwrite(payload.data(), 1, payload.size(), stdout);
  else
    nva::spit_file(out_path, payload);
}

/* Self-check requested by --replay: every witness in the report must still
 * certify its fact.  A failure is an operational error, not a verdict. */
template <class F>
void self_replay(const F& field, const nva::AlgebraPtr<F>& fallback, const json& rep,
                 std::ostringstream& txt) {
  auto outcome = nva::replay_report(field, fallback, rep);
  if (!outcome.ok()) {
    std::string msg = "self-replay failed:";
    for (const auto& f : outcome.failures) msg += "\n  " + f;
    throw nva::Error(msg);
  }
  txt << "replayed " << outcome.total << " witness" << (outcome.total == 1 ? "" : "es")
      << ": confirmed\n";
}

// ---------------------------------------------------------------------------
// construct
// ---------------------------------------------------------------------------

int run_construct(const std::string& recipe_path, const std::string& out_path) {
  const json recipe = nva::parse_json_text(nva::slurp_file(recipe_path), recipe_path);
  const nva::FieldSpec spec = nva::file_field_spec(recipe);
  auto [text, summary] = nva::with_field(spec, [&](auto field) {
    auto A = nva::build_recipe(field, recipe);
    return std::pair<std::string, std::string>(
        nva::algebra_file_text(A),
        "dim " + std::to_string(A->dim()) + " over " + spec.str());
  });
  if (out_path.empty()) {
    std::fwrite(text.data(), 1, text.size(), stdout);
  } else {
    nva::spit_file(out_path, text);
    std::printf("wrote %s (%s)\n", out_path.c_str(), summary.c_str());
  }
  return 0;
}

// ---------------------------------------------------------------------------
// check
// ---------------------------------------------------------------------------

int run_check(const std::string& algebra_path, const std::string& ids_path,
              std::uint64_t budget_tuples, const std::string& format,
              const std::string& out_path, bool do_replay) {
  Stopwatch clock;
  const std::string abytes = nva::slurp_file(algebra_path);
  const std::string ibytes = nva::slurp_file(ids_path);
  const json aj = nva::parse_json_text(abytes, algebra_path);
  const nva::FieldSpec spec = nva::file_field_spec(aj);

  json rep = nva::report_skeleton("check");
  nva::report_add_input(rep, "algebra", algebra_path, abytes);
  nva::report_add_input(rep, "identities", ids_path, ibytes);
  rep["arguments"] = json{{"budget_tuples", budget_tuples}};

  std::string text = nva::with_field(spec, [&](auto field) -> std::string {
    auto A = nva::algebra_from_json(field, aj);
    auto ids = nva::read_identity_lines(field, ibytes);
    std::ostringstream txt;
    txt << "check " << algebra_path << " (dim " << A->dim() << " over " << spec.str()
        << ") against " << ids_path << "\n";
    json results = json::array();
    bool all = true;
    for (const auto& id : ids) {
      auto v = nva::holds_in(A, id, {budget_tuples});
      json r{{"identity", id.source}, {"holds", v.holds}};
      txt << (v.holds ? "  pass  " : "  FAIL  ") << id.source << "\n";
      if (!v.holds && v.witness) {
        r["witness"] = nva::witness_to_json(id.source, *v.witness);
        describe_witness(txt, "        ", *v.witness);
      }
      all = all && v.holds;
      results.push_back(std::move(r));
    }
    rep["results"] =
        json{{"algebra", json{{"dim", A->dim()}, {"field", spec.str()}}},
             {"identities", std::move(results)},
             {"all_hold", all}};
    txt << (all ? "all identities hold\n" : "some identities fail\n");
    if (do_replay) self_replay(field, A, rep, txt);
    return txt.str();
  });

  rep["timings"] = json{{"total_ms", clock.ms()}};
  emit(rep, text, format, out_path);
  return 0;
}

// ---------------------------------------------------------------------------
// probe-admissibility
// ---------------------------------------------------------------------------

int run_probe(const std::string& pres_path, const std::string& field_flag,
              std::uint32_t max_degree, std::uint64_t budget_enum, const std::string& format,
              const std::string& out_path) {
  Stopwatch clock;
  const std::string pbytes = nva::slurp_file(pres_path);
  const nva::FieldSpec spec = nva::FieldSpec::parse(field_flag);

  json rep = nva::report_skeleton("probe-admissibility");
  nva::report_add_input(rep, "presentation", pres_path, pbytes);
  rep["arguments"] = json{
      {"field", spec.str()}, {"max_degree", max_degree}, {"budget_enum", budget_enum}};

  std::string text = nva::with_field(spec, [&](auto field) -> std::string {
    auto V = nva::read_presentation(field, pbytes);
    auto pr = nva::admissibility_probe(V, max_degree, budget_enum);
    std::ostringstream txt;
    txt << "probe " << pres_path << " (class " << nva::variety_class_str(V.class_tag)
        << ", field " << spec.str() << ", degrees 2.." << max_degree << ")\n";
    json degrees = json::array();
    for (const auto& d : pr.degrees) {
      json dj{{"degree", d.degree},
              {"passes", d.passes},
              {"consequence_rank", d.consequence_rank},
              {"combined_rank", d.combined_rank}};
      txt << "  degree " << d.degree << ": consequence rank " << d.consequence_rank
          << ", with circle span " << d.combined_rank;
      if (d.passes) {
        txt << " — every Lie product covered\n";
      } else {
        dj["uncovered"] = d.witness;
        txt << " — uncovered: " << d.witness << "\n";
      }
      degrees.push_back(std::move(dj));
    }
    rep["results"] = json{{"class", nva::variety_class_str(V.class_tag)},
                          {"index", pr.index ? json(*pr.index) : json(nullptr)},
                          {"degrees", std::move(degrees)}};
    if (pr.index)
      txt << "admissibility index: " << *pr.index << "\n";
    else
      txt << "no admissible degree up to " << max_degree << "\n";
    return txt.str();
  });

  rep["timings"] = json{{"total_ms", clock.ms()}};
  emit(rep, text, format, out_path);
  return 0;
}

// ---------------------------------------------------------------------------
// gate
// ---------------------------------------------------------------------------

int run_gate(const std::string& pres_path, const std::string& field_flag,
             const std::string& format, const std::string& out_path, bool do_replay) {
  Stopwatch clock;
  const std::string pbytes = nva::slurp_file(pres_path);
  const nva::FieldSpec spec = nva::FieldSpec::parse(field_flag);

  json rep = nva::report_skeleton("gate");
  nva::report_add_input(rep, "presentation", pres_path, pbytes);
  rep["arguments"] = json{{"field", spec.str()}};

  std::string text = nva::with_field(spec, [&](auto field) -> std::string {
    using F = std::decay_t<decltype(field)>;
    auto V = nva::read_presentation(field, pbytes);
    auto g = nva::nonmatrix_gate(V);
    std::ostringstream txt;
    txt << "gate " << pres_path << " (class " << nva::variety_class_str(V.class_tag)
        << ", field " << spec.str() << ")\n";
    json entries = json::array();
    for (const auto& e : g.entries) {
      json je{{"algebra", e.algebra_name},
              {"dim", e.algebra->dim()},
              {"designated", e.designated},
              {"in_variety", e.in_variety}};
      txt << (e.in_variety ? "  satisfies  " : "  excluded   ") << e.algebra_name
          << (e.designated ? "" : "  (diagnostic only)");
      if (!e.in_variety) {
        txt << " — violates " << e.witness_identity << "\n";
        je["violated"] = e.witness_identity;
        if (e.witness) {
          je["witness"] = nva::witness_to_json(e.witness_identity, *e.witness);
          // the bank member is built internally, so the witness carries its
          // own algebra and replays without the original presentation
          je["witness"]["algebra"] = nva::algebra_to_json(e.algebra);
          describe_witness(txt, "               ", *e.witness);
        }
      } else {
        txt << "\n";
      }
      entries.push_back(std::move(je));
    }
    rep["results"] = json{{"nonmatrix", g.nonmatrix},
                          {"bank_limited", g.bank_limited},
                          {"entries", std::move(entries)}};
    txt << "nonmatrix: " << yesno(g.nonmatrix);
    if (g.bank_limited) txt << "  (relative to the designated bank)";
    txt << "\n";
    if (do_replay) self_replay(field, nva::AlgebraPtr<F>{}, rep, txt);
    return txt.str();
  });

  rep["timings"] = json{{"total_ms", clock.ms()}};
  emit(rep, text, format, out_path);
  return 0;
}

// ---------------------------------------------------------------------------
// analyze
// ---------------------------------------------------------------------------

struct AnalyzeParams {
  std::uint32_t n = 2;
  std::uint32_t k = 2;
  std::uint32_t cutoff = 12;
  std::string method = "auto";  // nil-radical: auto | enumerate-gfp | trace-form-char0
  std::uint64_t budget_enum = 200000;
  std::uint64_t samples = 0;  // nonzero switches the enumerative analyses to sampling
  std::uint64_t seed = 0;
};

template <class F>
json pair_witness_json(const char* tag, const char* second_key,
                       const std::pair<nva::Element<F>, nva::Element<F>>& w) {
  json j;
  j["replay"] = tag;
  j["u"] = nva::element_to_json(w.first);
  j[second_key] = nva::element_to_json(w.second);
  return j;
}

template <class F>
std::string analyze_dispatch(const F& field, const nva::AlgebraPtr<F>& A,
                             const std::string& name, const AnalyzeParams& p, json& rep) {
  std::ostringstream txt;
  const auto spec_str = field.spec().str();
  txt << "analyze " << name << " (dim " << A->dim() << " over " << spec_str << ")\n";

  if (name == "nilpotent-set") {
    nva::AnalysisOptions opt;
    opt.budget = p.budget_enum;
    opt.sampling = p.samples > 0;
    if (p.samples > 0) opt.samples = p.samples;
    opt.seed = p.seed;
    auto r = nva::nilpotent_set_analysis(A, opt);
    json res{{"sampled", r.sampled},
             {"population", r.population},
             {"nilpotent_count", r.nilpotent_count},
             {"closed_under_sum", r.closed_under_sum},
             {"is_subspace", r.is_subspace},
             {"is_ideal", r.is_ideal}};
    txt << "  " << (r.sampled ? "sampled " : "enumerated ") << r.population << " elements, "
        << r.nilpotent_count << " nilpotent\n";
    txt << "  closed under sums: " << yesno(r.closed_under_sum)
        << "   subspace: " << yesno(r.is_subspace) << "   ideal: " << yesno(r.is_ideal) << "\n";
    if (r.sum_witness) {
      res["sum_witness"] = pair_witness_json("nilpotent-sum", "v", *r.sum_witness);
      txt << "  sum escape: " << element_str(r.sum_witness->first) << "  and  "
          << element_str(r.sum_witness->second) << "\n";
    }
    if (r.ideal_witness) {
      res["ideal_witness"] = pair_witness_json("nilpotent-ideal", "multiplier", *r.ideal_witness);
      txt << "  ideal escape: " << element_str(r.ideal_witness->first) << "  multiplied by  "
          << element_str(r.ideal_witness->second) << "\n";
    }
    rep["results"] = std::move(res);
    return txt.str();
  }

  if (name == "nil-radical") {
    nva::NilRadicalMethod method;
    if (p.method == "enumerate-gfp")
      method = nva::NilRadicalMethod::enumerate_gfp;
    else if (p.method == "trace-form-char0")
      method = nva::NilRadicalMethod::trace_form_char0;
    else if (p.method == "auto")
      method = field.characteristic() == 0 ? nva::NilRadicalMethod::trace_form_char0
                                           : nva::NilRadicalMethod::enumerate_gfp;
    else
      throw nva::Error("unknown method '" + p.method +
                       "' (known: auto, enumerate-gfp, trace-form-char0)");
    auto r = nva::nil_radical_finite(A, method, p.budget_enum);
    json res{{"method", method == nva::NilRadicalMethod::enumerate_gfp ? "enumerate-gfp"
                                                                       : "trace-form-char0"},
             {"radical_dim", r.radical.dim()},
             {"radical", nva::subspace_to_json(r.radical)},
             {"verified_ideal", r.verified_ideal},
             {"verified_nil", r.verified_nil}};
    txt << "  method " << res["method"].get<std::string>() << "\n";
    txt << "  radical dimension " << r.radical.dim() << "\n";
    for (const auto& b : r.radical.basis_elements()) txt << "    " << element_str(b) << "\n";
    txt << "  verified ideal: " << yesno(r.verified_ideal)
        << "   verified nil: " << yesno(r.verified_nil) << "\n";
    if (r.non_nil_witness) {
      res["non_nil_witness"] =
          json{{"replay", "non-nil-element"}, {"u", nva::element_to_json(*r.non_nil_witness)}};
      txt << "  non-nil element found: " << element_str(*r.non_nil_witness) << "\n";
    }
    if (!r.note.empty()) {
      res["note"] = r.note;
      txt << "  note: " << r.note << "\n";
    }
    rep["results"] = std::move(res);
    return txt.str();
  }

  if (name == "operator-chain") {
    auto r = nva::operator_chain_span_check(A, p.n);
    json res{{"n", p.n},
             {"included", r.included},
             {"power_dim", r.power.dim()},
             {"chain_span_dim", r.chain_span.dim()}};
    txt << "  chain length " << p.n << ": power dimension " << r.power.dim()
        << ", chain span dimension " << r.chain_span.dim() << "\n";
    txt << "  every power-" << (1u << p.n) << " element reachable: " << yesno(r.included) << "\n";
    if (r.witness) {
      res["witness"] = json{{"replay", "chain-escape"},
                            {"n", p.n},
                            {"u", nva::element_to_json(*r.witness)}};
      txt << "  escape: " << element_str(*r.witness) << "\n";
    }
    rep["results"] = std::move(res);
    return txt.str();
  }

  if (name == "power-inclusion") {
    const bool included = nva::power_inclusion_check(A, p.k, p.n);
    auto minimal = nva::minimal_power_k(A, p.n, p.cutoff);
    json res{{"k", p.k},
             {"n", p.n},
             {"included", included},
             {"cutoff", p.cutoff},
             {"minimal_k", minimal ? json(*minimal) : json(nullptr)}};
    txt << "  principal powers A^" << p.k << " inside the plus-power space of degree " << p.n
        << ": " << yesno(included) << "\n";
    if (minimal)
      txt << "  least such k: " << *minimal << "\n";
    else
      txt << "  no k up to " << p.cutoff << " works\n";
    rep["results"] = std::move(res);
    return txt.str();
  }

  if (name == "nil-implies-nilpotent") {
    nva::AnalysisOptions opt;
    opt.budget = p.budget_enum;
    opt.sampling = p.samples > 0;
    if (p.samples > 0) opt.samples = p.samples;
    opt.seed = p.seed;
    auto r = nva::finite_nil_implies_nilpotent_check(A, opt);
    json res{{"sampled", r.sampled}, {"nil", r.nil}, {"alarm", r.alarm}};
    txt << "  every " << (r.sampled ? "sampled" : "") << " element nilpotent: " << yesno(r.nil)
        << "\n";
    if (r.non_nil_witness) {
      res["non_nil_witness"] =
          json{{"replay", "non-nil-element"}, {"u", nva::element_to_json(*r.non_nil_witness)}};
      txt << "  non-nil element: " << element_str(*r.non_nil_witness) << "\n";
    }
    if (r.index) {
      res["index"] = *r.index;
      txt << "  algebra nilpotency index: " << *r.index << "\n";
    }
    if (r.alarm) txt << "  alarm: nil but no algebra nilpotency index within the cutoff\n";
    rep["results"] = std::move(res);
    return txt.str();
  }

  throw nva::Error("unknown analysis '" + name +
                   "' (known: nilpotent-set, nil-radical, operator-chain, power-inclusion, "
                   "nil-implies-nilpotent)");
}

int run_analyze(const std::string& algebra_path, const std::string& name,
                const AnalyzeParams& p, const std::string& format, const std::string& out_path,
                bool do_replay) {
  Stopwatch clock;
  const std::string abytes = nva::slurp_file(algebra_path);
  const json aj = nva::parse_json_text(abytes, algebra_path);
  const nva::FieldSpec spec = nva::file_field_spec(aj);

  json rep = nva::report_skeleton("analyze");
  nva::report_add_input(rep, "algebra", algebra_path, abytes);
  rep["arguments"] = json{{"analysis", name},    {"n", p.n},
                          {"k", p.k},            {"cutoff", p.cutoff},
                          {"method", p.method},  {"budget_enum", p.budget_enum},
                          {"samples", p.samples}, {"seed", p.seed}};

  std::string text = nva::with_field(spec, [&](auto field) -> std::string {
    auto A = nva::algebra_from_json(field, aj);
    std::ostringstream txt;
    txt << analyze_dispatch(field, A, name, p, rep);
    if (do_replay) self_replay(field, A, rep, txt);
    return txt.str();
  });

  rep["timings"] = json{{"total_ms", clock.ms()}};
  emit(rep, text, format, out_path);
  return 0;
}

// ---------------------------------------------------------------------------
// replay
// ---------------------------------------------------------------------------

int run_replay(const std::string& report_path) {
  const json rep = nva::parse_json_text(nva::slurp_file(report_path), report_path);
  if (!rep.is_object() || !rep.contains("format") || rep["format"] != nva::report_format_tag)
    throw nva::Error("not a report file (expected \"format\": \"" +
                     std::string(nva::report_format_tag) + "\")");

  // Reports about a specific algebra name it in "inputs"; its digest must
  // still match before witnesses are taken at face value.  Gate reports have
  // no algebra input: every witness there carries its own algebra.
  std::optional<std::string> algebra_path;
  for (const auto& input : rep.value("inputs", json::array())) {
    if (input.value("role", "") != "algebra") continue;
    algebra_path = input.at("path").get<std::string>();
    const std::string bytes = nva::slurp_file(*algebra_path);
    if (nva::fnv1a64_hex(bytes) != input.at("fnv1a64").get<std::string>())
      throw nva::Error("input '" + *algebra_path + "' changed since the report was written");
  }

  nva::ReplayOutcome outcome;
  if (algebra_path) {
    const std::string abytes = nva::slurp_file(*algebra_path);
    const json aj = nva::parse_json_text(abytes, *algebra_path);
    outcome = nva::with_field(nva::file_field_spec(aj), [&](auto field) {
      auto A = nva::algebra_from_json(field, aj);
      return nva::replay_report(field, A, rep);
    });
  } else {
    if (!rep.contains("arguments") || !rep["arguments"].contains("field"))
      throw nva::Error("report names neither an algebra input nor a field");
    auto spec = nva::FieldSpec::parse(rep["arguments"]["field"].get<std::string>());
    outcome = nva::with_field(spec, [&](auto field) {
      using F = std::decay_t<decltype(field)>;
      return nva::replay_report(field, nva::AlgebraPtr<F>{}, rep);
    });
  }

  if (!outcome.ok()) {
    for (const auto& f : outcome.failures) std::fprintf(stderr, "replay: %s\n", f.c_str());
    return 1;
  }
  std::printf("replayed %zu witness%s: confirmed\n", outcome.total,
              outcome.total == 1 ? "" : "es");
  return 0;
}

}  // namespace

// ---------------------------------------------------------------------------
// main
// ---------------------------------------------------------------------------

int main(int argc, char** argv) {
  CLI::App app{"exact workbench for finite-dimensional nonassociative algebras"};
  app.require_subcommand(1);

  std::string out_path, format = "text";
  auto add_report_flags = [&](CLI::App* sub) {
    sub->add_option("--format", format, "report rendering")
        ->check(CLI::IsMember({"text", "structured"}));
    sub->add_option("--out", out_path, "write the report to this file instead of stdout");
  };

  // construct
  std::string recipe_path;
  auto* c_construct = app.add_subcommand("construct", "build an algebra file from a recipe");
  c_construct->add_option("recipe", recipe_path, "recipe file (JSON)")
      ->required()
      ->check(CLI::ExistingFile);
  c_construct->add_option("--out", out_path, "algebra file to write (stdout when omitted)");

  // check
  std::string algebra_path, ids_path;
  std::uint64_t budget_tuples = 2'000'000;
  bool do_replay = false;
  auto* c_check = app.add_subcommand("check", "evaluate identities on an algebra");
  c_check->add_option("algebra", algebra_path, "algebra file")
      ->required()
      ->check(CLI::ExistingFile);
  c_check->add_option("identities", ids_path, "identity file, one identity per line")
      ->required()
      ->check(CLI::ExistingFile);
  c_check->add_option("--budget-tuples", budget_tuples, "cap on basis tuples per component")
      ->check(CLI::PositiveNumber);
  c_check->add_flag("--replay", do_replay, "re-check every witness before reporting");
  add_report_flags(c_check);

  // probe-admissibility
  std::string pres_path, field_flag = "gf:101";
  std::uint32_t max_degree = 4;
  std::uint64_t budget_enum = 200000;
  auto* c_probe =
      app.add_subcommand("probe-admissibility", "least degree covering all Lie products");
  c_probe->add_option("presentation", pres_path, "presentation file (class: header + identities)")
      ->required()
      ->check(CLI::ExistingFile);
  c_probe->add_option("--field", field_flag, "working field: q, gf:<p> or q-sqrt:<d>");
  c_probe->add_option("--max-degree", max_degree, "probe degrees 2..n")
      ->check(CLI::PositiveNumber);
  c_probe->add_option("--budget-enum", budget_enum, "cap on enumerated spanning rows")
      ->check(CLI::PositiveNumber);
  add_report_flags(c_probe);

  // gate
  auto* c_gate = app.add_subcommand("gate", "nonmatrix gate over the designated algebra bank");
  c_gate->add_option("presentation", pres_path, "presentation file (class: header + identities)")
      ->required()
      ->check(CLI::ExistingFile);
  c_gate->add_option("--field", field_flag, "working field: q, gf:<p> or q-sqrt:<d>");
  c_gate->add_flag("--replay", do_replay, "re-check every witness before reporting");
  add_report_flags(c_gate);

  // analyze
  std::string analysis_name;
  AnalyzeParams params;
  auto* c_analyze = app.add_subcommand("analyze", "nilpotence analyses on an algebra file");
  c_analyze->add_option("algebra", algebra_path, "algebra file")
      ->required()
      ->check(CLI::ExistingFile);
  c_analyze
      ->add_option("analysis", analysis_name,
                   "nilpotent-set | nil-radical | operator-chain | power-inclusion | "
                   "nil-implies-nilpotent")
      ->required();
  c_analyze->add_option("--n", params.n, "chain length / plus-power degree")
      ->check(CLI::PositiveNumber);
  c_analyze->add_option("--k", params.k, "principal power for power-inclusion")
      ->check(CLI::PositiveNumber);
  c_analyze->add_option("--cutoff", params.cutoff, "largest k tried for minimal inclusions")
      ->check(CLI::PositiveNumber);
  c_analyze->add_option("--method", params.method,
                        "nil-radical method: auto | enumerate-gfp | trace-form-char0");
  c_analyze->add_option("--budget-enum", params.budget_enum, "cap on enumerated elements")
      ->check(CLI::PositiveNumber);
  c_analyze->add_option("--samples", params.samples,
                        "sample this many elements instead of full enumeration");
  c_analyze->add_option("--seed", params.seed, "seed for sampled sweeps");
  c_analyze->add_flag("--replay", do_replay, "re-check every witness before reporting");
  add_report_flags(c_analyze);

  // replay
  std::string report_path;
  auto* c_replay = app.add_subcommand("replay", "re-check every witness in a report");
  c_replay->add_option("report", report_path, "structured report file")
      ->required()
      ->check(CLI::ExistingFile);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*c_construct) return run_construct(recipe_path, out_path);
    if (*c_check)
      return run_check(algebra_path, ids_path, budget_tuples, format, out_path, do_replay);
    if (*c_probe)
      return run_probe(pres_path, field_flag, max_degree, budget_enum, format, out_path);
    if (*c_gate) return run_gate(pres_path, field_flag, format, out_path, do_replay);
    if (*c_analyze)
      return run_analyze(algebra_path, analysis_name, params, format, out_path, do_replay);
    if (*c_replay) return run_replay(report_path);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "nva: error: %s\n", e.what());
    return 1;
  }
  return 1;
}
