// qsv: command-line driver for the q-series verification library.
//
// Every subcommand writes one JSON record per line to stdout. Job-running
// subcommands additionally print a table to stderr and exit nonzero when a
// job fails; --json-only suppresses the table and the elapsed field, making
// two runs with the same arguments byte-identical.

#include <exception>
#include <iomanip>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include <qseries/verify.hpp>

namespace {

using qseries::JobResult;
using qseries::Series;

class Reporter {
 public:
  explicit Reporter(bool json_only) : json_only_(json_only) {}

  void emit(const JobResult& r) {
    jobs_.push_back(r);
    std::cout << r.to_json(!json_only_).dump() << "\n";
  }

  int exit_code() const {
    size_t failed = 0;
    for (const JobResult& j : jobs_)
      if (!j.pass) ++failed;
    if (!json_only_) {
      std::cerr << std::left << std::setw(28) << "JOB" << std::right << std::setw(7) << "N"
                << "  " << std::left << std::setw(8) << "VERDICT" << std::right << std::setw(10)
                << "MISMATCH" << std::setw(12) << "ELAPSED_MS" << "\n";
      std::cerr << std::fixed << std::setprecision(1);
      for (const JobResult& j : jobs_) {
        std::cerr << std::left << std::setw(28) << j.job << std::right << std::setw(7) << j.order
                  << "  " << std::left << std::setw(8) << (j.pass ? "PASS" : "FAIL") << std::right
                  << std::setw(10)
                  << (j.first_mismatch ? std::to_string(*j.first_mismatch) : std::string("-"))
                  << std::setw(12) << j.elapsed_ms << "\n";
      }
      std::cerr << jobs_.size() - failed << "/" << jobs_.size() << " jobs passed\n";
    }
    return failed == 0 ? 0 : 1;
  }

 private:
  bool json_only_;
  std::vector<JobResult> jobs_;
};

void emit_data(const nlohmann::ordered_json& j) { std::cout << j.dump() << "\n"; }

nlohmann::ordered_json series_record(const std::string& id, const Series& s) {
  nlohmann::ordered_json j;
  j["id"] = id;
  j["N"] = s.order();
  nlohmann::ordered_json coeffs = nlohmann::ordered_json::array();
  for (long n = 0; n <= s.order(); ++n) coeffs.push_back(s.coeff(n).str());
  j["coeffs"] = std::move(coeffs);
  return j;
}

std::vector<qseries::CountMethod> selected_methods(const std::string& method) {
  if (method == "enum") return {qseries::CountMethod::Enumerate};
  if (method == "mult") return {qseries::CountMethod::Multiplicative};
  return {qseries::CountMethod::Enumerate, qseries::CountMethod::Multiplicative};
}

qseries::FamilyConvention parse_convention(int family, const std::vector<std::string>& overrides) {
  qseries::FamilyConvention conv;
  conv.family = family;
  for (const std::string& name : qseries::family_switches(family)) conv.flags[name] = false;
  for (const std::string& kv : overrides) {
    auto eq = kv.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("convention overrides use KEY=VALUE, got: " + kv);
    std::string key = kv.substr(0, eq);
    std::string val = kv.substr(eq + 1);
    if (key == "delta") {
      conv.delta = std::stoi(val);
      continue;
    }
    auto it = conv.flags.find(key);
    if (it == conv.flags.end()) throw std::invalid_argument("unknown convention switch: " + key);
    if (val == "1" || val == "true")
      it->second = true;
    else if (val == "0" || val == "false")
      it->second = false;
    else
      throw std::invalid_argument("switch values are true/false or 1/0, got: " + kv);
  }
  return conv;
}

JobResult run_custom_family(int family, long pin, const qseries::FamilyConvention& conv) {
  qseries::detail::Stopwatch sw;
  Series got = qseries::family_oracle(family, pin, conv);
  Series want = qseries::family_target(family, pin);
  JobResult r = qseries::compare_series_job("ORACLE_FAMILY_" + std::to_string(family) + "/CUSTOM",
                                            got, want);
  r.detail["convention"] = qseries::convention_to_json(conv);
  r.elapsed_ms = sw.ms();
  return r;
}

JobResult run_single_pair(const std::string& name, long n_max, long order) {
  qseries::detail::Stopwatch sw;
  JobResult r;
  r.job = "BAILEY_PAIR/" + name;
  r.order = order;
  const auto pairs = qseries::standard_pairs();
  const qseries::BaileyPair* found = nullptr;
  for (const auto& p : pairs)
    if (p.name == name) found = &p;
  if (!found) throw std::invalid_argument("unknown pair: " + name);
  qseries::PairRelationReport rep = qseries::verify_pair_relation(*found, n_max, order);
  r.pass = rep.ok;
  if (!rep.ok) {
    r.first_mismatch = rep.mismatch_order;
    r.detail["bad_index"] = rep.first_bad_n;
  }
  r.detail["n_max"] = n_max;
  r.elapsed_ms = sw.ms();
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"q-series expansion and identity verification driver"};
  app.require_subcommand(1);

  long terms = 2000;
  std::string method = "both";
  bool json_only = false;
  app.add_option("--terms", terms, "Truncation order for series jobs")->capture_default_str();
  app.add_option("--method", method, "Ideal count method")
      ->check(CLI::IsMember({"enum", "mult", "both"}))
      ->capture_default_str();
  app.add_flag("--json-only", json_only,
               "Reproducible output: no stderr table, no elapsed fields");

  std::string expand_id;
  CLI::App* cmd_expand = app.add_subcommand("expand", "Print a catalog series");
  cmd_expand->add_option("id", expand_id, "Series name, e.g. SIGMA or F3")->required();
  cmd_expand->fallthrough();

  std::string hecke_id;
  CLI::App* cmd_hecke = app.add_subcommand("hecke", "Print a double-sum evaluation");
  cmd_hecke->add_option("id", hecke_id, "Double-sum name, e.g. HECKE3 or DISSECT5")->required();
  cmd_hecke->fallthrough();

  std::string ring_name = "both";
  CLI::App* cmd_ideals = app.add_subcommand("ideals", "Print ideal counts by norm");
  cmd_ideals->add_option("--ring", ring_name, "sqrt2, sqrt3, or both")
      ->check(CLI::IsMember({"sqrt2", "sqrt3", "both"}))
      ->capture_default_str();
  cmd_ideals->fallthrough();

  std::string pair_name;
  CLI::App* cmd_bailey = app.add_subcommand("bailey", "Run the summation-machinery jobs");
  cmd_bailey->add_option("--pair", pair_name, "Check one registered pair's defining relation");
  cmd_bailey->fallthrough();

  int family = 0;
  long pin = 20;
  std::vector<std::string> convention_kv;
  CLI::App* cmd_oracle = app.add_subcommand("oracle", "Run the combinatorial oracle jobs");
  cmd_oracle->add_option("--family", family, "Restrict to one family (1..8)")
      ->check(CLI::Range(1, 8));
  cmd_oracle->add_option("--pin", pin, "Enumeration order for the oracle comparison")
      ->capture_default_str();
  cmd_oracle->add_option("--convention", convention_kv,
                         "Override switches (KEY=VALUE, repeatable); needs --family");
  cmd_oracle->fallthrough();

  std::string stats_id;
  CLI::App* cmd_density = app.add_subcommand("density", "Decade density checks");
  cmd_density->add_option("--id", stats_id, "Restrict to one series");
  cmd_density->fallthrough();

  CLI::App* cmd_values = app.add_subcommand("values", "Value attainment checks");
  cmd_values->add_option("--id", stats_id, "Restrict to one series");
  cmd_values->fallthrough();

  CLI::App* cmd_all = app.add_subcommand("verify-all", "Run the full verification battery");
  cmd_all->fallthrough();

  CLI11_PARSE(app, argc, argv);

  try {
    if (cmd_expand->parsed()) {
      emit_data(series_record(expand_id, qseries::expand(qseries::series_id_from_string(expand_id),
                                                         terms)));
      return 0;
    }

    if (cmd_hecke->parsed()) {
      emit_data(series_record(hecke_id,
                              qseries::evaluate(qseries::hecke_id_from_string(hecke_id), terms)));
      return 0;
    }

    if (cmd_ideals->parsed()) {
      std::vector<qseries::Ring> rings;
      if (ring_name == "sqrt2" || ring_name == "both") rings.push_back(qseries::Ring::Sqrt2);
      if (ring_name == "sqrt3" || ring_name == "both") rings.push_back(qseries::Ring::Sqrt3);
      for (qseries::Ring ring : rings) {
        for (qseries::CountMethod m : selected_methods(method)) {
          nlohmann::ordered_json j;
          j["ring"] = qseries::to_string(ring);
          j["N"] = terms;
          j["method"] = qseries::to_string(m);
          nlohmann::ordered_json counts = nlohmann::ordered_json::array();
          counts.push_back(0);
          for (long n = 1; n <= terms; ++n) counts.push_back(qseries::ideal_count(ring, n, m));
          j["counts"] = std::move(counts);
          emit_data(j);
        }
      }
      return 0;
    }

    Reporter rep(json_only);

    if (cmd_bailey->parsed()) {
      if (!pair_name.empty()) {
        rep.emit(run_single_pair(pair_name, 12, 400));
      } else {
        rep.emit(qseries::run_bailey_pairs(12, 400));
        rep.emit(qseries::run_bailey_inversion(10, 300));
        rep.emit(qseries::run_u_sequence(20, 18, 400));
        rep.emit(qseries::run_heine(200));
        for (int i = 1; i <= 8; ++i) rep.emit(qseries::run_chain(i, 500));
      }
      return rep.exit_code();
    }

    if (cmd_oracle->parsed()) {
      if (!convention_kv.empty()) {
        if (family == 0)
          throw std::invalid_argument("--convention requires --family to pick the family");
        rep.emit(run_custom_family(family, pin, parse_convention(family, convention_kv)));
      } else if (family != 0) {
        rep.emit(qseries::run_family_oracle(family, pin));
      } else {
        rep.emit(qseries::run_sigma_oracle(30));
        for (int f = 1; f <= 8; ++f) rep.emit(qseries::run_family_oracle(f, pin));
      }
      return rep.exit_code();
    }

    if (cmd_density->parsed() || cmd_values->parsed()) {
      std::vector<qseries::SeriesId> ids;
      if (stats_id.empty())
        ids = qseries::stats_series_ids();
      else
        ids.push_back(qseries::series_id_from_string(stats_id));
      for (qseries::SeriesId id : ids) {
        Series s = qseries::expand(id, terms);
        if (cmd_density->parsed())
          rep.emit(qseries::run_density(id, s));
        else
          rep.emit(qseries::run_values(id, s));
      }
      return rep.exit_code();
    }

    if (cmd_all->parsed()) {
      for (const JobResult& j :
           qseries::verify_all(terms, method != "mult", method != "enum"))
        rep.emit(j);
      return rep.exit_code();
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
