// Copyright 2026 The SubMPC Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "submpc/cli.h"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "submpc/report.h"

namespace submpc {

namespace {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

const std::set<std::string> kFlagKeys = {"live"};

std::string ReadFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string Trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

std::vector<std::string> SplitList(const std::string& text) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    item = Trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::uint64_t ParseCount(const std::string& text, const std::string& what) {
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(text, &used);
    if (used != text.size() || text[0] == '-') throw std::invalid_argument(text);
    return v;
  } catch (const std::logic_error&) {
    throw ConfigError(what + ": expected a nonnegative integer, got '" + text + "'");
  }
}

std::vector<std::uint64_t> ParseCountList(const std::string& text, const std::string& what) {
  std::vector<std::uint64_t> out;
  for (const auto& item : SplitList(text)) out.push_back(ParseCount(item, what));
  return out;
}

// Rebuilds the argument list as: subcommand, config values the user did not
// pass as flags, then the user's own flags. Later flags cannot clash since
// a key given on the command line is never injected.
std::vector<std::string> ApplyConfig(std::vector<std::string> args) {
  std::optional<std::string> path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[i + 1];
      args.erase(args.begin() + i, args.begin() + i + 2);
      break;
    }
    if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
      args.erase(args.begin() + i);
      break;
    }
  }
  if (!path) return args;
  auto config = ParseConfigText(ReadFile(*path));

  std::vector<std::string> out;
  if (args.empty() || args[0].rfind("-", 0) == 0) {
    auto it = config.find("command");
    if (it == config.end()) throw ConfigError("no command given on the command line or in config");
    out.push_back(it->second);
  } else {
    out.push_back(args[0]);
    args.erase(args.begin());
  }
  config.erase("command");
  auto given = [&](const std::string& key) {
    return std::any_of(args.begin(), args.end(), [&](const std::string& a) {
      return a == "--" + key || a.rfind("--" + key + "=", 0) == 0;
    });
  };
  for (const auto& [key, value] : config) {
    if (given(key)) continue;
    if (kFlagKeys.count(key)) {
      if (value == "true" || value == "1") out.push_back("--" + key);
    } else {
      out.push_back("--" + key + "=" + value);
    }
  }
  out.insert(out.end(), args.begin(), args.end());
  return out;
}

void EchoConfig(std::ostream& out, const CLI::App& sub, const std::string& prefix) {
  out << prefix << "command=" << sub.get_name() << '\n';
  for (const CLI::Option* opt : sub.get_options()) {
    const std::string name = opt->get_single_name();
    if (name == "help" || (opt->count() == 0 && opt->get_default_str().empty())) continue;
    std::string value;
    if (opt->get_type_size() == 0) {
      value = opt->count() > 0 ? "true" : "false";
    } else if (opt->count() > 0) {
      const auto& results = opt->results();
      for (std::size_t i = 0; i < results.size(); ++i) value += (i ? "," : "") + results[i];
    } else {
      value = opt->get_default_str();
    }
    out << prefix << name << '=' << value << '\n';
  }
}

struct CommonFlags {
  std::string f1 = "hamming";
  std::string alphabets = "2,2";
  std::string format = "text";
  std::string out_path;
};

void AddCommon(CLI::App* sub, CommonFlags& flags, const std::string& default_format,
               const std::vector<std::string>& formats) {
  flags.format = default_format;
  sub->add_option("--f1", flags.f1, "Builtin table (hamming, equality, sqdiff, product) or path")
      ->capture_default_str();
  sub->add_option("--alphabets", flags.alphabets, "|X|,|Y| for builtin tables")
      ->capture_default_str();
  sub->add_option("--format", flags.format, "Output format")
      ->check(CLI::IsMember(formats))
      ->capture_default_str();
  sub->add_option("--out", flags.out_path, "Write output here instead of stdout");
}

FunctionTable LoadF1(const CommonFlags& flags) {
  if (IsBuiltinTable(flags.f1)) {
    const auto sizes = ParseCountList(flags.alphabets, "--alphabets");
    if (sizes.size() != 2 || sizes[0] == 0 || sizes[1] == 0) {
      throw ConfigError("--alphabets must be two positive sizes, e.g. 2,2");
    }
    return BuiltinTable(flags.f1, sizes[0], sizes[1]);
  }
  return LoadFunctionTable(flags.f1);
}

Sequence ReadSequenceFile(const std::string& path, const Alphabet& alphabet) {
  std::istringstream in(ReadFile(path));
  Sequence out;
  std::string line;
  for (int line_no = 1; std::getline(in, line); ++line_no) {
    std::istringstream tokens(line);
    std::string token;
    while (tokens >> token) {
      if (token[0] == '#') break;
      if (!alphabet.Contains(token)) {
        throw ConfigError(path + ":" + std::to_string(line_no) + ": symbol '" + token +
                          "' not in alphabet");
      }
      out.push_back(alphabet.IndexOf(token));
    }
  }
  if (out.empty()) throw ConfigError(path + ": no symbols");
  return out;
}

std::uint64_t ResolveMFlag(const std::string& text, std::uint64_t n) {
  if (text == "equal-n") return n;
  if (text == "sqrt") return ResolveM(MRuleSpec{MRule::kSqrt, 1, {}}, n, 0);
  const std::uint64_t m = ParseCount(text, "--m");
  if (m == 0 || m > n) {
    throw ConfigError("--m=" + text + " must be in [1, n=" + std::to_string(n) + "]");
  }
  return m;
}

OpeningMode ParseOpening(const std::string& text) {
  return text == "masked" ? OpeningMode::kMasked : OpeningMode::kPlain;
}

// Output sink: --out file or the CLI's stdout.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : fallback_(fallback) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw ConfigError("cannot write '" + path + "'");
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : fallback_; }

 private:
  std::ofstream file_;
  std::ostream& fallback_;
};

// ---------------------------------------------------------------------------

struct RunFlags {
  CommonFlags common;
  std::string protocol = "otp";
  std::string x_path, y_path, generator;
  std::uint64_t n = 0;
  std::uint64_t gen_seed = 0;
  std::string m = "equal-n";
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> modulus;
  std::string opening = "plain";
  std::string transcript_path;
};

int CmdRun(const RunFlags& f, const CLI::App& sub, std::ostream& out) {
  if (!f.seed) throw ConfigError("run requires --seed");
  const FunctionTable f1 = LoadF1(f.common);
  Sequence x, y;
  if (!f.generator.empty()) {
    if (!f.x_path.empty() || !f.y_path.empty()) {
      throw ConfigError("give either --generator or --x/--y, not both");
    }
    if (f.n == 0) throw ConfigError("--generator requires --n >= 1");
    std::tie(x, y) = GenerateSequences(f.generator, f.n, f1.x_size(), f1.y_size(), f.gen_seed);
  } else {
    if (f.x_path.empty() || f.y_path.empty()) {
      throw ConfigError("give --x and --y files, or --generator");
    }
    x = ReadSequenceFile(f.x_path, f1.x_alphabet());
    y = ReadSequenceFile(f.y_path, f1.y_alphabet());
    if (x.size() != y.size()) {
      throw ConfigError("--x has " + std::to_string(x.size()) + " symbols, --y has " +
                        std::to_string(y.size()));
    }
  }
  const std::uint64_t n = x.size();
  const std::uint64_t m = ResolveMFlag(f.m, n);
  ProtocolOptions options;
  options.modulus = f.modulus;
  options.opening = ParseOpening(f.opening);
  const ProtocolResult r = RunProtocol(ParseProtocolId(f.protocol), f1, x, y, m, *f.seed, options);
  const Rational truth = f1.EvalSumType(x, y);
  const Rational error = Abs(r.estimate - truth);

  Sink sink(f.common.out_path, out);
  std::ostream& os = sink.stream();
  if (f.common.format == "json") {
    nlohmann::ordered_json j;
    std::ostringstream cfg;
    EchoConfig(cfg, sub, "");
    j["config"] = cfg.str();
    j["protocol"] = f.protocol;
    j["n"] = n;
    j["m"] = m;
    j["modulus"] = r.params.modulus;
    j["estimate"] = FormatRational(r.estimate);
    j["f_n"] = FormatRational(truth);
    j["abs_error"] = FormatRational(error);
    j["k"] = r.total_bits;
    j["rate"] = FormatRational(r.rate);
    j["index_bits"] = r.index_bits;
    j["extra_bits"] = r.extra_bits();
    os << j.dump(2) << '\n';
  } else {
    EchoConfig(os, sub, "# ");
    std::ostringstream body;
    body << "protocol    " << f.protocol << '\n'
         << "n           " << n << '\n'
         << "m           " << m << '\n'
         << "p           " << r.params.modulus << '\n'
         << "estimate    " << FormatRational(r.estimate) << '\n'
         << "f_n         " << FormatRational(truth) << '\n'
         << "abs_error   " << FormatRational(error) << '\n'
         << "k           " << r.total_bits << '\n'
         << "R           " << FormatRational(r.rate) << " (" << FormatDouble(ToDouble(r.rate))
         << ")\n"
         << "index_bits  " << r.index_bits << '\n'
         << "extra_bits  " << r.extra_bits() << '\n';
    os << body.str();
  }
  if (!f.transcript_path.empty()) {
    if (f.transcript_path == "-") {
      os << DumpTranscript(r);
    } else {
      std::ofstream t(f.transcript_path);
      if (!t) throw ConfigError("cannot write '" + f.transcript_path + "'");
      t << DumpTranscript(r);
    }
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct AuditFlags {
  CommonFlags common;
  std::string protocol = "otp";
  std::uint64_t n = 2;
  std::uint64_t m = 1;
  std::optional<std::uint64_t> modulus;
  std::string opening = "plain";
  std::uint64_t budget = kDefaultAuditBudget;
  std::string fixed_indices;
};

int CmdAudit(const AuditFlags& f, const CLI::App& sub, std::ostream& out,
             const CliExtensions& ext) {
  const FunctionTable f1 = LoadF1(f.common);
  if (f.m == 0 || f.m > f.n) throw ConfigError("audit requires 1 <= m <= n");
  AuditTarget target;
  if (auto it = ext.audit_targets.find(f.protocol); it != ext.audit_targets.end()) {
    target = it->second(f1, f.n, f.m);
  } else {
    ProtocolOptions options;
    options.modulus = f.modulus;
    options.opening = ParseOpening(f.opening);
    if (!f.fixed_indices.empty()) {
      options.fixed_indices = IndexSet(f.n, ParseCountList(f.fixed_indices, "--fixed-indices"));
    }
    target = MakeAuditTarget(ParseProtocolId(f.protocol), f1, f.n, f.m, options);
  }
  AuditOptions audit_options;
  audit_options.budget = f.budget;
  const auto reports = AuditAll(target, audit_options);

  Sink sink(f.common.out_path, out);
  std::ostream& os = sink.stream();
  if (f.common.format == "json") {
    nlohmann::ordered_json j = nlohmann::ordered_json::array();
    for (const auto& r : reports) j.push_back(ToJson(r));
    os << j.dump(2) << '\n';
  } else {
    EchoConfig(os, sub, "# ");
    if (target.fixed_indices) os << "# note: I fixed, not enumerated (weaker audit)\n";
    os << FormatPrivacyText(reports);
  }
  const bool pass = std::all_of(reports.begin(), reports.end(),
                                [](const PrivacyReport& r) { return r.pass; });
  return pass ? kExitOk : kExitVerificationFailed;
}

// ---------------------------------------------------------------------------

struct DistortionFlags {
  CommonFlags common;
  std::string n_list = "4";
  std::string m_list = "1,2,3,4";
  std::string mode = "exhaustive";
  std::uint64_t trials = 10'000;
  std::uint64_t candidates = 8;
  std::uint64_t seed = 1;
  std::uint64_t budget = kDefaultSubsetBudget;
  std::string protocol = "poly-l";
};

int CmdDistortion(const DistortionFlags& f, const CLI::App& sub, std::ostream& out) {
  const FunctionTable f1 = LoadF1(f.common);
  DistortionExperimentOptions options;
  options.search.mode =
      f.mode == "exhaustive" ? DistortionMode::kExhaustive : DistortionMode::kMonteCarlo;
  options.search.trials = f.trials;
  options.search.random_candidates = f.candidates;
  options.search.seed = f.seed;
  options.search.budget = f.budget;
  options.protocol = ParseProtocolId(f.protocol);
  const auto reports = DistortionExperiment(f1, ParseCountList(f.n_list, "--n"),
                                            ParseCountList(f.m_list, "--m"), options);
  Sink sink(f.common.out_path, out);
  std::ostream& os = sink.stream();
  if (f.common.format == "json") {
    nlohmann::ordered_json j = nlohmann::ordered_json::array();
    for (const auto& r : reports) j.push_back(ToJson(r));
    os << j.dump(2) << '\n';
  } else if (f.common.format == "csv") {
    EchoConfig(os, sub, "# ");
    os << DistortionCsv(reports);
  } else {
    EchoConfig(os, sub, "# ");
    os << DistortionText(reports);
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct CommFlags {
  CommonFlags common;
  std::string protocol = "poly-l";
  std::string n_list = "64,256,1024,4096";
  std::string m_rule = "sqrt";
  std::string m;
  std::optional<std::uint64_t> modulus;
  std::string opening = "plain";
  bool live = false;
  std::uint64_t seed = 1;
};

int CmdCommCost(const CommFlags& f, const CLI::App& sub, std::ostream& out) {
  const FunctionTable f1 = LoadF1(f.common);
  MRuleSpec rule;
  if (f.m_rule == "fixed") {
    rule.rule = MRule::kFixed;
    if (f.m.empty()) throw ConfigError("--m-rule fixed requires --m");
    rule.fixed = ParseCount(f.m, "--m");
  } else if (f.m_rule == "custom") {
    rule.rule = MRule::kCustom;
    rule.custom = ParseCountList(f.m, "--m");
  } else if (f.m_rule == "equal-n") {
    rule.rule = MRule::kEqualN;
  } else {
    rule.rule = MRule::kSqrt;
  }
  CommReportOptions options;
  options.modulus = f.modulus;
  options.opening = ParseOpening(f.opening);
  options.live = f.live;
  options.seed = f.seed;
  const auto rows =
      CommReport(ParseProtocolId(f.protocol), f1, ParseCountList(f.n_list, "--n"), rule, options);
  Sink sink(f.common.out_path, out);
  std::ostream& os = sink.stream();
  if (f.common.format == "json") {
    nlohmann::ordered_json j = nlohmann::ordered_json::array();
    for (const auto& r : rows) j.push_back(ToJson(r));
    os << j.dump(2) << '\n';
  } else if (f.common.format == "csv") {
    EchoConfig(os, sub, "# ");
    os << CommCsv(rows);
  } else {
    EchoConfig(os, sub, "# ");
    os << CommText(rows);
  }
  return kExitOk;
}

}  // namespace

std::map<std::string, std::string> ParseConfigText(const std::string& text) {
  std::map<std::string, std::string> out;
  std::istringstream in(text);
  std::string line;
  for (int line_no = 1; std::getline(in, line); ++line_no) {
    line = Trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(line_no) + ": expected key=value");
    }
    std::string key = Trim(line.substr(0, eq));
    if (key.rfind("--", 0) == 0) key = key.substr(2);
    if (key.empty()) throw ConfigError("config line " + std::to_string(line_no) + ": empty key");
    out[key] = Trim(line.substr(eq + 1));
  }
  return out;
}

int RunCli(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err,
           const CliExtensions& extensions) {
  CLI::App app{"Subsampled three-party secure computation: protocols, audits, experiments"};
  app.require_subcommand(1);

  const std::vector<std::string> protocols = {"otp", "poly-l", "poly-direct"};
  std::vector<std::string> audit_protocols = protocols;
  for (const auto& [name, factory] : extensions.audit_targets) audit_protocols.push_back(name);
  const auto openings = CLI::IsMember({"plain", "masked"});

  RunFlags run;
  CLI::App* run_cmd = app.add_subcommand("run", "Run one protocol and report the estimate");
  AddCommon(run_cmd, run.common, "text", {"text", "json"});
  run_cmd->add_option("--protocol", run.protocol)->check(CLI::IsMember(protocols))
      ->capture_default_str();
  run_cmd->add_option("--x", run.x_path, "File of X symbols, whitespace separated");
  run_cmd->add_option("--y", run.y_path, "File of Y symbols");
  run_cmd->add_option("--generator", run.generator, "Builtin sequence pair generator")
      ->check(CLI::IsMember(SequenceGeneratorNames()));
  run_cmd->add_option("--n", run.n, "Length for --generator");
  run_cmd->add_option("--gen-seed", run.gen_seed, "Seed for seeded-random")->capture_default_str();
  run_cmd->add_option("--m", run.m, "Sample size: integer, equal-n or sqrt")->capture_default_str();
  run_cmd->add_option("--seed", run.seed, "Protocol randomness seed (required)");
  run_cmd->add_option("--modulus", run.modulus, "Field prime; default is the smallest admissible");
  run_cmd->add_option("--opening", run.opening)->check(openings)->capture_default_str();
  run_cmd->add_option("--transcript", run.transcript_path, "Dump transcript to file, or - for stdout");

  AuditFlags audit;
  CLI::App* audit_cmd = app.add_subcommand("audit", "Exact privacy audit over all input pairs");
  AddCommon(audit_cmd, audit.common, "text", {"text", "json"});
  audit_cmd->add_option("--protocol", audit.protocol)->check(CLI::IsMember(audit_protocols))
      ->capture_default_str();
  audit_cmd->add_option("--n", audit.n)->capture_default_str();
  audit_cmd->add_option("--m", audit.m)->capture_default_str();
  audit_cmd->add_option("--modulus", audit.modulus);
  audit_cmd->add_option("--opening", audit.opening)->check(openings)->capture_default_str();
  audit_cmd->add_option("--budget", audit.budget, "Max randomness leaves over all pairs")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  audit_cmd->add_option("--fixed-indices", audit.fixed_indices,
                        "Condition on this I (1-based, comma separated); weaker audit");

  DistortionFlags dist;
  CLI::App* dist_cmd = app.add_subcommand("distortion", "Worst-case distortion sweep");
  AddCommon(dist_cmd, dist.common, "csv", {"csv", "json", "text"});
  dist_cmd->add_option("--n", dist.n_list, "Comma-separated n values")->capture_default_str();
  dist_cmd->add_option("--m", dist.m_list, "Comma-separated m values")->capture_default_str();
  dist_cmd->add_option("--mode", dist.mode)
      ->check(CLI::IsMember({"exhaustive", "monte-carlo"}))
      ->capture_default_str();
  dist_cmd->add_option("--trials", dist.trials)->check(CLI::PositiveNumber)->capture_default_str();
  dist_cmd->add_option("--candidates", dist.candidates, "Random candidate pairs (Monte Carlo)")
      ->capture_default_str();
  dist_cmd->add_option("--seed", dist.seed)->capture_default_str();
  dist_cmd->add_option("--budget", dist.budget)->check(CLI::PositiveNumber)->capture_default_str();
  dist_cmd->add_option("--protocol", dist.protocol, "Protocol run for the R column")
      ->check(CLI::IsMember(protocols))
      ->capture_default_str();

  CommFlags comm;
  CLI::App* comm_cmd = app.add_subcommand("comm-cost", "Communication cost table");
  AddCommon(comm_cmd, comm.common, "csv", {"csv", "json", "text"});
  comm_cmd->add_option("--protocol", comm.protocol)->check(CLI::IsMember(protocols))
      ->capture_default_str();
  comm_cmd->add_option("--n", comm.n_list, "Comma-separated n values")->capture_default_str();
  comm_cmd->add_option("--m-rule", comm.m_rule)
      ->check(CLI::IsMember({"fixed", "sqrt", "equal-n", "custom"}))
      ->capture_default_str();
  comm_cmd->add_option("--m", comm.m, "m for fixed, or comma list for custom");
  comm_cmd->add_option("--modulus", comm.modulus);
  comm_cmd->add_option("--opening", comm.opening)->check(openings)->capture_default_str();
  comm_cmd->add_flag("--live", comm.live, "Also run each cell and check the metered bits");
  comm_cmd->add_option("--seed", comm.seed)->capture_default_str();

  try {
    std::vector<std::string> args = ApplyConfig(raw_args);
    std::reverse(args.begin(), args.end());  // CLI11 consumes from the back
    app.parse(args);
    if (run_cmd->parsed()) return CmdRun(run, *run_cmd, out);
    if (audit_cmd->parsed()) return CmdAudit(audit, *audit_cmd, out, extensions);
    if (dist_cmd->parsed()) return CmdDistortion(dist, *dist_cmd, out);
    if (comm_cmd->parsed()) return CmdCommCost(comm, *comm_cmd, out);
    return kExitConfigError;
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const BudgetExceededError& e) {
    err << "error: " << e.what() << "; reduce n, m, the alphabets or the field, or raise --budget\n";
    return kExitConfigError;
  } catch (const ProtocolError& e) {
    err << "verification failure: " << e.what() << '\n';
    return kExitVerificationFailed;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const std::logic_error& e) {
    err << "verification failure: " << e.what() << '\n';
    return kExitVerificationFailed;
  } catch (const std::runtime_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfigError;
  }
}

}  // namespace submpc
