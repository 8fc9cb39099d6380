// desco_cli: build, sweep and bound multicast streaming codes.
//
//   desco_cli construct --b1 1 --t1 2 --alpha 2 > code.json
//   desco_cli sweep --code code.json --user 2 --out delays.csv
//   desco_cli capacity --b1 1 --t1 2 --b2 2 --t2 4
//   desco_cli converse --b 1 --t 2 --alpha 2 --t2 4
//
// Exit status: 0 ok / certified, 2 not certified, 3 bad parameters.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "desco/descriptor.hpp"
#include "desco/musco.hpp"
#include "desco/sweep.hpp"

namespace {

using nlohmann::json;
using namespace desco;

constexpr int kOk = 0;
constexpr int kNotCertified = 2;
constexpr int kBadParameters = 3;

json rational_json(const Rational& r, const std::string& prefix) {
  return json{{prefix + "_num", r.numerator()}, {prefix + "_den", r.denominator()}};
}

void write_csv(std::ostream& out, const SweepReport& rep) {
  out << "offset,burst_len,symbol_time,sub_row,recovered_at,delay,decoder\n";
  for (const auto& s : rep.scenarios) {
    for (const auto* which : {&s.structural, &s.oracle}) {
      const char* name = which == &s.structural ? "structural" : "oracle";
      for (const auto& id : which->erased) {
        out << s.offset << ',' << s.burst_len << ',' << id.time << ',' << id.row << ',';
        if (auto it = which->recovered_at.find(id); it != which->recovered_at.end()) {
          out << it->second << ',' << it->second - id.time;
        } else {
          out << ',';
        }
        out << ',' << name << '\n';
      }
    }
  }
}

// `--config file.json` becomes the equivalent flags, placed right after the
// subcommand so that flags given explicitly still win.
std::vector<std::string> expand_config(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  for (std::size_t n = 1; n + 1 < args.size(); ++n) {
    if (args[n] != "--config") continue;
    std::ifstream in(args[n + 1]);
    if (!in) throw CLI::ValidationError("--config", "cannot open " + args[n + 1]);
    json cfg;
    try {
      in >> cfg;
    } catch (const json::exception& e) {
      throw CLI::ValidationError("--config", e.what());
    }
    if (!cfg.is_object()) throw CLI::ValidationError("--config", "config must be a JSON object");
    std::vector<std::string> flags;
    for (const auto& [key, value] : cfg.items()) {
      std::string flag = "--" + key;
      std::replace(flag.begin() + 2, flag.end(), '_', '-');
      flags.push_back(flag);
      flags.push_back(value.is_string() ? value.get<std::string>() : value.dump());
    }
    args.erase(args.begin() + static_cast<std::ptrdiff_t>(n), args.begin() + static_cast<std::ptrdiff_t>(n + 2));
    args.insert(args.begin() + 2, flags.begin(), flags.end());
    break;
  }
  return args;
}

int run(int argc, char** argv) {
  CLI::App app{"Build, sweep and bound two-receiver streaming codes"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);
  app.set_config();  // disable the built-in INI/TOML reader; --config is JSON
  app.add_option("--config", "JSON file whose keys are read as flags");

  CodeSpec spec;
  int b2 = 0;
  int t2 = 0;
  int shift = -1;
  auto* construct = app.add_subcommand("construct", "Build and certify a code; prints its JSON descriptor");
  construct->add_option("--b1", spec.b1, "Burst length of receiver 1")->required();
  construct->add_option("--t1", spec.t1, "Delay of receiver 1")->required();
  construct->add_option("--alpha", spec.alpha, "Burst ratio B2/B1")->required();
  construct->add_option("--field-bits", spec.field_bits, "m for GF(2^m)")->capture_default_str();
  construct->add_option("--kind", spec.kind, "desco, ccsco, iasco or expanded")
      ->check(CLI::IsMember({"desco", "ccsco", "iasco", "expanded"}))
      ->capture_default_str();
  construct->add_option("--b2", b2, "ccsco: burst length of receiver 2");
  construct->add_option("--t2", t2, "ccsco: delay of receiver 2");
  construct->add_option("--shift", shift, "iasco: parity shift (default: smallest certified)");

  std::string code_file;
  std::string csv_file;
  int user = 1;
  SweepOptions opts;
  auto* sweep_cmd = app.add_subcommand("sweep", "Every burst start and length, structural and oracle delays");
  sweep_cmd->add_option("--code", code_file, "JSON descriptor from construct")->required()->check(CLI::ExistingFile);
  sweep_cmd->add_option("--user", user, "Receiver")->required()->check(CLI::IsMember({1, 2}));
  sweep_cmd->add_option("--horizon", opts.horizon, "Slots simulated per scenario");
  sweep_cmd->add_option("--seed", opts.seed, "Source seed")->capture_default_str();
  sweep_cmd->add_option("--out", csv_file, "CSV of per-symbol recovery times")->required();

  MulticastParams mp;
  auto* capacity_cmd = app.add_subcommand("capacity", "Known optimal rate for two receivers");
  capacity_cmd->add_option("--b1", mp.B1)->required();
  capacity_cmd->add_option("--t1", mp.T1)->required();
  capacity_cmd->add_option("--b2", mp.B2)->required();
  capacity_cmd->add_option("--t2", mp.T2)->required();

  int cb = 0;
  int ct = 0;
  int calpha = 0;
  int ct2 = 0;
  Time chorizon = 0;
  auto* converse_cmd = app.add_subcommand("converse", "Periodic-erasure rate bound and its oracle experiment");
  converse_cmd->add_option("--b", cb)->required();
  converse_cmd->add_option("--t", ct)->required();
  converse_cmd->add_option("--alpha", calpha)->required();
  converse_cmd->add_option("--t2", ct2)->required();
  converse_cmd->add_option("--horizon", chorizon, "Simulated slots (default: eight periods)");

  std::vector<std::string> args;
  try {
    args = expand_config(argc, argv);
  } catch (const CLI::Error& e) {
    return app.exit(e) == 0 ? kOk : kBadParameters;
  }
  std::vector<std::string> reversed(args.rbegin(), args.rend() - 1);
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::Error& e) {
    app.exit(e);
    return kBadParameters;
  }

  try {
    if (*construct) {
      if (b2 > 0) spec.b2 = b2;
      if (t2 > 0) spec.t2 = t2;
      if (shift >= 0) spec.shift = shift;
      std::cout << describe(build_code(spec)).dump(2) << '\n';
      return kOk;
    }
    if (*sweep_cmd) {
      std::ifstream in(code_file);
      json descriptor;
      try {
        in >> descriptor;
      } catch (const json::exception& e) {
        throw ParameterError(std::string("cannot parse ") + code_file + ": " + e.what());
      }
      const auto built = code_from_json(descriptor);
      const auto r = user == 1 ? Receiver::user1 : Receiver::user2;
      const auto rep = sweep(*built.code, r, opts);
      std::ofstream out(csv_file);
      if (!out) throw ParameterError("cannot write " + csv_file);
      write_csv(out, rep);
      json summary{{"kind", built.spec.kind},
                   {"user", user},
                   {"contract", {{"burst", rep.contract.burst}, {"delay", rep.contract.delay}}},
                   {"scenarios", rep.scenarios.size()},
                   {"horizon", rep.horizon},
                   {"worst_delay", rep.worst_delay()},
                   {"oracle_worst_delay", rep.oracle_worst_delay},
                   {"dominance_violations", rep.dominance_violations},
                   {"certified", rep.certified}};
      summary.update(rational_json(rep.rate, "rate"));
      std::cout << summary.dump(2) << '\n';
      return rep.certified ? kOk : kNotCertified;
    }
    if (*capacity_cmd) {
      const auto a = capacity(mp);
      json out{{"region", a.region}, {"rate_num", nullptr}, {"rate_den", nullptr}};
      if (a.rate) out.update(rational_json(*a.rate, "rate"));
      std::cout << out.dump(2) << '\n';
      return kOk;
    }
    if (*converse_cmd) {
      if (cb < 1 || ct < cb) throw ParameterError("converse needs 1 <= b <= t");
      const Rational bound = converse_rate_bound(cb, ct2, calpha);
      const Rational rate(ct, ct + cb);
      json out = rational_json(bound, "bound");
      out["feasible"] = bound >= rate;
      out.update(rational_json(rate, "rate"));
      const auto exp = converse_experiment(cb, ct, calpha, ct2, chorizon);
      out["experiment"] = json{{"period", exp.period},
                               {"erasures_per_period", exp.erasures_per_period},
                               {"judged", exp.judged},
                               {"late", exp.late}};
      std::cout << out.dump(2) << '\n';
      return kOk;
    }
  } catch (const ParameterError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBadParameters;
  } catch (const gf::FieldError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBadParameters;
  } catch (const ConstructionError& e) {
    std::cerr << "not certified: " << e.what() << '\n';
    return kNotCertified;
  }
  return kBadParameters;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
