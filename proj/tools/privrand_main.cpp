// privrand: command-line front end for the Werner/Bell-diagonal scans, the
// repeater-bound evaluators, the CLODCC protocol runner and the property
// suites.  All numeric output is fixed at 12 significant digits and all
// randomness is seed-controlled, so identical invocations produce identical
// bytes.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "privrand/belldiag.hpp"
#include "privrand/bounds.hpp"
#include "privrand/clodcc.hpp"
#include "privrand/densop.hpp"
#include "privrand/ensembles.hpp"
#include "privrand/entropic.hpp"
#include "privrand/format.hpp"
#include "privrand/report.hpp"
#include "privrand/verify.hpp"
#include "privrand/version.hpp"
#include "privrand/werner.hpp"

namespace {

using namespace privrand;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailure = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<double> parse_double_list(const std::string& csv) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    out.push_back(std::stod(tok));
  }
  if (out.empty()) throw UsageError("empty numeric list: " + csv);
  return out;
}

std::vector<std::string> parse_string_list(const std::string& csv) {
  std::vector<std::string> out;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (!tok.empty()) out.push_back(tok);
  }
  return out;
}

// ---------------------------------------------------------------------------
// state specs:  werner:d,alpha | belldiag:a+,a-,b+,b- | alphaV:d |
//               psiplus:d | file:<path>
// ---------------------------------------------------------------------------

DensityOperator load_state_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open state file: " + path);
  std::string header;
  if (!std::getline(in, header)) throw UsageError("empty state file: " + path);
  std::istringstream hs(header);
  std::string tag;
  hs >> tag;
  if (tag != "dims:") throw UsageError("state file must start with 'dims: d1 d2 ...'");
  std::vector<std::size_t> dims;
  for (std::size_t d; hs >> d;) dims.push_back(d);
  if (dims.empty()) throw UsageError("state file declares no dimensions");

  std::vector<Register> regs;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    std::string party = "A";
    if (dims.size() >= 2 && i + 1 == dims.size()) party = "B";
    else if (dims.size() >= 3 && i > 0) party = "C";
    regs.push_back(Register{"r" + std::to_string(i), dims[i], party});
  }
  SubsystemLayout layout(regs);
  const std::size_t n = layout.total_dim();
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double re, im;
      if (!(in >> re >> im))
        throw UsageError("state file truncated; expected " + std::to_string(n * n) +
                         " complex entries");
      m(i, j) = cplx(re, im);
    }
  return DensityOperator(std::move(m), std::move(layout));
}

DensityOperator parse_state_spec(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) throw UsageError("bad state spec: " + spec);
  const std::string kind = spec.substr(0, colon);
  const std::string args = spec.substr(colon + 1);
  if (kind == "werner") {
    const auto v = parse_double_list(args);
    if (v.size() != 2) throw UsageError("werner spec needs d,alpha");
    return werner(WernerParams{static_cast<std::size_t>(v[0]), v[1]});
  }
  if (kind == "belldiag") {
    const auto v = parse_double_list(args);
    if (v.size() != 4) throw UsageError("belldiag spec needs a+,a-,b+,b-");
    return bell_diagonal(BellDiagParams{v[0], v[1], v[2], v[3]});
  }
  if (kind == "alphaV") {
    const auto v = parse_double_list(args);
    if (v.size() != 1) throw UsageError("alphaV spec needs d");
    return alpha_V(static_cast<std::size_t>(v[0]));
  }
  if (kind == "psiplus") {
    const auto v = parse_double_list(args);
    if (v.size() != 1) throw UsageError("psiplus spec needs d");
    return max_entangled(static_cast<std::size_t>(v[0]));
  }
  if (kind == "file") return load_state_file(args);
  throw UsageError("unknown state spec kind: " + kind);
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write: " + path);
  out << content;
}

void write_manifest(const std::string& command,
                    std::vector<std::pair<std::string, std::string>> params,
                    std::uint64_t seed, const std::string& primary_out,
                    std::vector<std::string> outputs) {
  RunManifest m;
  m.command = command;
  m.parameters = std::move(params);
  m.seed = seed;
  const std::string path = primary_out + ".manifest.json";
  outputs.push_back(path);
  m.outputs = std::move(outputs);
  write_file(path, to_json(m).dump(2) + "\n");
}

// ---------------------------------------------------------------------------
// subcommands
// ---------------------------------------------------------------------------

int cmd_werner_scan(const std::string& alpha_csv, std::size_t d_min, std::size_t d_max,
                    const std::string& out_path) {
  if (d_min < 2 || d_max < d_min) throw UsageError("empty or invalid d range");
  std::vector<double> alphas;
  if (alpha_csv.empty()) {
    for (int k = 2; k <= 19; ++k) alphas.push_back(0.05 * k);  // 0.10 .. 0.95
  } else {
    alphas = parse_double_list(alpha_csv);
  }
  const auto rows = werner_scan(alphas, d_min, d_max);
  const std::string csv = werner_scan_csv(rows);
  write_file(out_path, csv);

  std::vector<CriticalDimensionSummary> summaries;
  for (double a : alphas) summaries.push_back(critical_dimension_summary(a, d_min, d_max));
  const std::string summary_csv = critical_dimension_summary_csv(summaries);
  const std::string summary_path = out_path + ".dcri.csv";
  write_file(summary_path, summary_csv);

  write_manifest("werner-scan",
                 {{"alpha_list", alpha_csv.empty() ? std::string("default") : alpha_csv},
                  {"d_min", std::to_string(d_min)},
                  {"d_max", std::to_string(d_max)},
                  {"out", out_path}},
                 0, out_path, {out_path, summary_path});

  std::cout << "wrote " << rows.size() << " rows to " << out_path << "\n";
  std::cout << summary_csv;
  for (const auto& s : summaries) {
    if (!s.discrepancy) continue;
    std::cout << "note: derived d_cri for alpha=" << fmt12(s.alpha) << " is "
              << (s.derived ? std::to_string(*s.derived) : std::string("none"))
              << ", reference value " << *s.reference
              << "; per-d margins are in " << out_path << "\n";
  }
  return kExitOk;
}

int cmd_bell_search(std::size_t samples, std::uint64_t seed, bool separable_only,
                    const std::string& out_path) {
  if (samples < 1) throw UsageError("--samples must be >= 1");
  const BellSearchReport report = random_search(SearchConfig{samples, seed, separable_only});
  const std::string body = to_json(report).dump(2) + "\n";
  std::cout << "samples=" << report.samples << " violations=" << report.violations.size()
            << " runtime_ms=" << report.runtime_ms << "\n";
  if (!out_path.empty()) {
    write_file(out_path, body);
    write_manifest("bell-search",
                   {{"samples", std::to_string(samples)},
                    {"separable_only", separable_only ? "true" : "false"},
                    {"out", out_path}},
                   seed, out_path, {out_path});
  } else {
    std::cout << body;
  }
  return kExitOk;
}

int cmd_bound(const std::string& state_spec, const std::string& state2_spec,
              const std::string& formula, const std::string& out_path) {
  const DensityOperator rho = parse_state_spec(state_spec);
  auto rho_tilde = [&]() {
    return state2_spec.empty() ? parse_state_spec(state_spec) : parse_state_spec(state2_spec);
  };

  BoundReport r;
  if (formula == "eq19") {
    r = ppt_repeater_bound(rho, rho_tilde());
  } else if (formula == "eq5-form") {
    r = purity_form_bound(rho, rho_tilde());
  } else if (formula == "eq6") {
    r = mi_form_bound(rho);
  } else if (formula == "cor9-form") {
    r = ppt_transposed_rate_bound(rho, rho_tilde());
  } else if (formula == "eq30") {
    const GapCondition g = gap_condition(rho);
    r.formula_id = "eq30";
    r.provenance = "strict gap between the two mutual informations";
    r.value = g.lhs - g.rhs;
    r.side_conditions.push_back({"marginals_maximally_mixed", g.marginals_maximally_mixed});
    r.side_conditions.push_back({"gap_holds", g.holds});
    r.inputs.emplace_back("lhs", fmt12(g.lhs));
    r.inputs.emplace_back("rhs", fmt12(g.rhs));
  } else if (formula == "norms") {
    r.formula_id = "norms";
    r.provenance = "trace-norm distance bound on single-round outputs";
    r.value = iid_norm_bound(rho, rho_tilde());
  } else if (formula == "prop9") {
    r = iid_entropy_bound(rho);
  } else if (formula == "theorem10") {
    const auto& l = rho.layout();
    if (l.size() != 3 || l.at(0).dim != 2 || l.at(1).dim != l.at(2).dim)
      throw UsageError("theorem10 expects an alphaV:<d> state");
    r = alpha_iid_bound_report(l.at(1).dim);
  } else {
    throw UsageError("unknown formula id: " + formula);
  }
  r.inputs.emplace_back("state", state_spec);
  if (!state2_spec.empty()) r.inputs.emplace_back("state2", state2_spec);

  const std::string body = to_json(r).dump(2) + "\n";
  std::cout << body;
  if (!out_path.empty()) {
    write_file(out_path, body);
    write_manifest("bound",
                   {{"state", state_spec},
                    {"state2", state2_spec},
                    {"formula", formula},
                    {"out", out_path}},
                   0, out_path, {out_path});
  }
  if (!r.applicable())
    std::cout << "note: at least one side condition fails; value reported with flag\n";
  return kExitOk;
}

int cmd_verify(const std::string& suite, std::uint64_t seed) {
  std::vector<std::string> names;
  if (suite == "all")
    names = verify::suite_names();
  else
    names.push_back(suite);

  std::size_t failures = 0, total = 0;
  for (const auto& name : names) {
    const auto checks = verify::suite_by_name(name, seed);  // throws on unknown suite
    for (const auto& c : checks) {
      ++total;
      if (!c.pass) ++failures;
      std::cout << (c.pass ? "[PASS] " : "[FAIL] ") << c.name << "  (" << c.detail << ")\n";
    }
  }
  std::cout << total - failures << "/" << total << " checks passed\n";
  return failures == 0 ? kExitOk : kExitCheckFailure;
}

int cmd_protocol(const std::string& script, const std::string& state_spec,
                 const std::string& target_spec, const std::string& fidelity_regs_csv,
                 bool record_eve, const std::string& out_path) {
  DensityOperator input = [&]() {
    if (!state_spec.empty()) return parse_state_spec(state_spec);
    if (script == "builtin:swap") return entanglement_swap_input();
    throw UsageError("--state is required for file scripts");
  }();

  ProtocolCircuit circuit = [&]() {
    if (script == "builtin:swap") {
      ProtocolCircuit c = entanglement_swap_circuit(true, record_eve);
      return c;
    }
    std::ifstream in(script);
    if (!in) throw UsageError("cannot open script: " + script);
    const std::filesystem::path dir = std::filesystem::path(script).parent_path();
    auto loader = [&dir](const std::string& name, std::size_t dim) {
      const std::filesystem::path p = dir / name;
      std::ifstream mf(p);
      if (!mf) throw UsageError("cannot open matrix file: " + p.string());
      ComplexMatrix m(dim, dim);
      for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) {
          double re, im;
          if (!(mf >> re >> im))
            throw UsageError("matrix file truncated: " + p.string());
          m(i, j) = cplx(re, im);
        }
      return m;
    };
    return parse_script(in, input.layout(), loader, record_eve);
  }();

  const ApplyResult result = apply(circuit, input);

  ordered_json j;
  j["script"] = script;
  j["steps"] = circuit.steps.size();
  ordered_json party_entropies = ordered_json::object();
  for (const auto& party : result.state.layout().parties()) {
    std::vector<std::string> others;
    for (const auto& r : result.state.layout().registers())
      if (r.party != party) others.push_back(r.label);
    const DensityOperator marginal =
        others.empty() ? result.state
                       : partial_trace(result.state, std::span<const std::string>(others));
    party_entropies[party] = json_number(von_neumann_entropy(marginal));
  }
  j["party_entropies_bits"] = party_entropies;
  j["output_entropy_bits"] = json_number(von_neumann_entropy(result.state));

  std::vector<std::string> fid_regs = parse_string_list(fidelity_regs_csv);
  std::optional<DensityOperator> target;
  if (!target_spec.empty()) target = parse_state_spec(target_spec);
  if (script == "builtin:swap" && !target && fid_regs.empty()) {
    target = max_entangled(2);
    fid_regs = {"A", "B"};
  }
  if (target) {
    DensityOperator part = result.state;
    if (!fid_regs.empty()) {
      std::vector<std::string> drop;
      for (const auto& r : result.state.layout().registers()) {
        bool keep = false;
        for (const auto& f : fid_regs) keep = keep || f == r.label;
        if (!keep) drop.push_back(r.label);
      }
      if (!drop.empty()) part = partial_trace(result.state, std::span<const std::string>(drop));
    }
    if (part.dim() != target->dim())
      throw UsageError("fidelity target dimension mismatch; use --fidelity-regs");
    j["fidelity"] = json_number(fidelity(part.matrix(), target->matrix()));
  }
  if (record_eve) {
    j["eve_entropy_bits"] = json_number(result.eve_entropy_bits());
    ordered_json records = ordered_json::array();
    for (const auto& r : result.eve) {
      ordered_json dist = ordered_json::array();
      for (double p : r.distribution) dist.push_back(json_number(p));
      records.push_back(ordered_json{{"reg", r.reg}, {"distribution", dist}});
    }
    j["eve_records"] = records;
  }

  const std::string body = j.dump(2) + "\n";
  std::cout << body;
  if (!out_path.empty()) {
    write_file(out_path, body);
    write_manifest("protocol",
                   {{"script", script},
                    {"state", state_spec},
                    {"target", target_spec},
                    {"out", out_path}},
                   0, out_path, {out_path});
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerics for localisable vs repeated private randomness"};
  app.set_version_flag("--version", privrand::kToolVersion);
  app.require_subcommand(1);

  // werner-scan
  auto* scan = app.add_subcommand("werner-scan", "closed-form Werner gap scan, CSV output");
  std::string scan_alphas;
  std::size_t scan_dmin = 2, scan_dmax = 200;
  std::string scan_out = "werner_scan.csv";
  scan->add_option("--alpha-list", scan_alphas, "comma-separated alphas (default 0.10..0.95)");
  scan->add_option("--d-min", scan_dmin, "smallest dimension");
  scan->add_option("--d-max", scan_dmax, "largest dimension");
  scan->add_option("--out", scan_out, "output CSV path");

  // bell-search
  auto* search = app.add_subcommand("bell-search", "randomized Bell-diagonal gap search");
  std::size_t search_samples = 500000;
  std::uint64_t search_seed = 0;
  bool search_separable = true;
  std::string search_out;
  search->add_option("--samples", search_samples, "number of simplex samples");
  search->add_option("--seed", search_seed, "RNG seed");
  search->add_flag("--separable-only,!--no-separable-only", search_separable,
                   "restrict to weights <= 1/2");
  search->add_option("--out", search_out, "output JSON path");

  // bound
  auto* bound = app.add_subcommand("bound", "evaluate one bound as a JSON report");
  std::string bound_state, bound_state2, bound_formula, bound_out;
  bound->add_option("--state", bound_state, "state spec")->required();
  bound->add_option("--state2", bound_state2, "second state spec (defaults to --state)");
  bound->add_option("--formula", bound_formula,
                    "eq19 | eq5-form | eq6 | cor9-form | eq30 | norms | prop9 | theorem10")
      ->required();
  bound->add_option("--out", bound_out, "output JSON path");

  // verify
  auto* ver = app.add_subcommand("verify", "run the property suites");
  std::string ver_suite = "all";
  std::uint64_t ver_seed = 20240901;
  ver->add_option("--suite", ver_suite,
                  "densop | ensembles | entropic | clodcc | bounds | werner | belldiag | all");
  ver->add_option("--seed", ver_seed, "RNG seed");

  // protocol
  auto* proto = app.add_subcommand("protocol", "run a CLODCC script on a state");
  std::string proto_script, proto_state, proto_target, proto_fid_regs, proto_out;
  bool proto_eve = false;
  proto->add_option("--script", proto_script, "script path or builtin:swap")->required();
  proto->add_option("--state", proto_state, "input state spec");
  proto->add_option("--target", proto_target, "fidelity target state spec");
  proto->add_option("--fidelity-regs", proto_fid_regs, "registers compared to the target");
  proto->add_flag("--eve", proto_eve, "record Eve's classical ledger");
  proto->add_option("--out", proto_out, "output JSON path");

  try {
    app.parse(argc, argv);
    if (scan->parsed()) return cmd_werner_scan(scan_alphas, scan_dmin, scan_dmax, scan_out);
    if (search->parsed())
      return cmd_bell_search(search_samples, search_seed, search_separable, search_out);
    if (bound->parsed()) return cmd_bound(bound_state, bound_state2, bound_formula, bound_out);
    if (ver->parsed()) return cmd_verify(ver_suite, ver_seed);
    if (proto->parsed())
      return cmd_protocol(proto_script, proto_state, proto_target, proto_fid_regs, proto_eve,
                          proto_out);
    return kExitUsage;
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? kExitOk : kExitUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCheckFailure;
  }
}
