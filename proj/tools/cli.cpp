#include "cli.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "rmlab/complexity.hpp"
#include "rmlab/decoder_spec.hpp"
#include "rmlab/llr.hpp"
#include "rmlab/sim.hpp"
#include "run_config.hpp"

namespace rmlab::cli {

using nlohmann::json;

namespace {

// CLI11 would read "-inf" as an option cluster; such tokens are swapped for
// this marker before parsing.
const std::string kNegInfMarker = "\x01-inf";

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

std::string fixed(double value, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
  return buf;
}

double round_to(double value, int decimals) {
  const double scale = std::pow(10.0, decimals);
  return std::round(value * scale) / scale;
}

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path);
  if (!file) throw std::runtime_error("cannot write " + path);
  file << text;
  if (!file) throw std::runtime_error("failed writing " + path);
}

struct ConfigFlags {
  std::string config_path;
  std::optional<int> r, m;
  std::vector<std::string> decoders;
  std::vector<double> snr;
  std::optional<std::uint64_t> seed, ensemble_seed, max_trials, min_errors;
  std::optional<unsigned> threads;
  std::optional<double> target, low_db, high_db;
  bool resample = false;
  std::string csv_path, json_path;

  void attach(CLI::App& cmd, bool search) {
    cmd.add_option("--config", config_path, "JSON run configuration; flags override its values")->check(CLI::ExistingFile);
    cmd.add_option("-r,--order", r, "code order r");
    cmd.add_option("-m,--log-length", m, "code log-length m");
    cmd.add_option("-d,--decoder", decoders, "decoder spec (repeatable)");
    cmd.add_option("--seed", seed, "channel seed");
    cmd.add_option("--ensemble-seed", ensemble_seed, "automorphism ensemble seed");
    cmd.add_flag("--resample-ensembles", resample, "draw fresh ensembles for every trial");
    cmd.add_option("--max-trials", max_trials, "trial cap per point");
    cmd.add_option("--min-errors", min_errors, "stop after this many block errors");
    cmd.add_option("--threads", threads, "worker threads (0 = all cores)");
    if (search) {
      cmd.add_option("--target-bler", target, "BLER at which the gap is measured");
      cmd.add_option("--low-db", low_db, "lower end of the SNR search range");
      cmd.add_option("--high-db", high_db, "upper end of the SNR search range");
      cmd.add_option("--json", json_path, "write JSON records here instead of stdout");
    } else {
      cmd.add_option("--snr", snr, "SNR points in dB (repeatable)");
      cmd.add_option("--csv", csv_path, "write CSV here instead of stdout");
    }
  }

  RunConfig resolve() const {
    RunConfig c = config_path.empty() ? RunConfig{} : load_run_config(config_path);
    if (r) c.r = *r;
    if (m) c.m = *m;
    if (!decoders.empty()) c.decoder_specs = decoders;
    if (!snr.empty()) c.snr_db = snr;
    if (seed) c.seed = *seed;
    if (ensemble_seed) c.ensemble_seed = *ensemble_seed;
    if (max_trials) c.max_trials = *max_trials;
    if (min_errors) c.min_errors = *min_errors;
    if (threads) c.threads = *threads;
    if (target) c.target_bler = *target;
    if (low_db) c.low_db = *low_db;
    if (high_db) c.high_db = *high_db;
    if (resample) c.resample_ensembles = true;
    if (!csv_path.empty()) c.csv_path = csv_path;
    if (!json_path.empty()) c.json_path = json_path;
    return c;
  }
};

SimOptions sim_options(const RunConfig& c) {
  SimOptions o;
  o.max_trials = c.max_trials;
  o.min_errors = c.min_errors;
  o.seed = c.seed;
  o.ensemble_seed = c.ensemble_seed;
  o.resample_ensembles = c.resample_ensembles;
  o.threads = c.threads;
  return o;
}

void cmd_encode(int r, int m, const std::string& message, std::ostream& out) {
  const RmCode code(r, m);
  out << format_bits(encode(code, parse_bits(message))) << "\n";
}

void cmd_decode(int r, int m, const std::string& spec_text, const std::vector<std::string>& llr_text, std::uint64_t seed,
                std::ostream& out) {
  const RmCode code(r, m);
  LlrVec llr;
  for (const auto& t : llr_text) llr.push_back(parse_llr(t));
  if (llr.size() != code.length())
    throw std::invalid_argument("expected " + std::to_string(code.length()) + " LLR values, got " + std::to_string(llr.size()));
  const Decoder decoder(code, DecoderSpec::parse(spec_text), seed);
  const BitVec word = decoder.decode(llr);
  std::ostringstream weight;
  weight << analog_weight(word, llr);
  out << format_bits(word) << " weight " << weight.str() << "\n";
}

void cmd_complexity(int r, int m, const std::string& spec_text, bool json_only, std::ostream& out) {
  const RmCode code(r, m);
  const DecoderSpec spec = DecoderSpec::parse(spec_text);
  const ComplexityReport report = complexity(code, spec);
  const json record{{"decoder_spec", spec.to_string()},
                    {"total_ops", report.total_ops},
                    {"ops_per_info_bit", round_to(report.ops_per_info_bit(), 3)}};
  if (!json_only) {
    out << std::left << std::setw(18) << "code" << "RM(" << r << "," << m << ")\n"
        << std::setw(18) << "decoder" << spec.to_string() << "\n"
        << std::setw(18) << "total_ops" << report.total_ops << "\n"
        << std::setw(18) << "ops_per_info_bit" << fixed(report.ops_per_info_bit(), 3) << "\n";
    if (report.optimistic) out << std::setw(18) << "note" << "selection cost uses the lower-bound fallback\n";
    out << "breakdown:\n";
    for (const auto& [address, ops] : report.breakdown)
      out << "  " << std::setw(16) << address.to_string() << ops << "\n";
  }
  out << record.dump() << "\n";
}

void cmd_simulate(const RunConfig& c, std::ostream& out) {
  if (c.snr_db.empty()) throw std::invalid_argument("simulate needs at least one SNR point");
  const RmCode code(c.r, c.m);
  std::vector<DecoderSpec> specs;
  for (const auto& s : c.decoder_specs) specs.push_back(DecoderSpec::parse(s));
  std::ostringstream csv;
  csv << "decoder_spec,snr_db,trials,errors,bler\n";
  for (const auto& spec : specs)
    for (double snr : c.snr_db) {
      const BlerEstimate e = estimate_bler(code, spec, snr, sim_options(c));
      std::ostringstream bler;
      bler << std::setprecision(6) << e.bler();
      csv << '"' << spec.to_string() << "\"," << snr << ',' << e.trials << ',' << e.errors << ',' << bler.str() << "\n";
    }
  write_output(c.csv_path, csv.str(), out);
}

DecoderSpec spec_for(const AutomorphismDistribution& dist) {
  DecoderSpec spec;
  if (!dist.empty()) {
    spec.kind = DecoderSpec::Kind::Ca;
    spec.distribution = dist;
  }
  return spec;
}

json sweep_record(const std::string& spec, double ops, double gap) {
  return json{{"decoder_spec", spec}, {"ops_per_info_bit", round_to(ops, 3)}, {"gap_db", round_to(gap, 3)}};
}

void cmd_sweep(const RunConfig& c, bool heuristic, const std::string& budget_spec, int max_size, std::ostream& out) {
  const RmCode code(c.r, c.m);
  std::vector<DecoderSpec> specs;
  for (const auto& s : c.decoder_specs) specs.push_back(DecoderSpec::parse(s));
  if (heuristic) {
    std::optional<std::uint64_t> budget;
    if (!budget_spec.empty()) budget = complexity(code, DecoderSpec::parse(budget_spec)).total_ops;
    for (const auto& dist : enumerate_heuristic_distributions(code, max_size, budget)) {
      const DecoderSpec spec = spec_for(dist);
      if (std::find(specs.begin(), specs.end(), spec) == specs.end()) specs.push_back(spec);
    }
  }
  SnrSearchOptions search;
  search.target_bler = c.target_bler;
  search.low_db = c.low_db;
  search.high_db = c.high_db;
  search.sim = sim_options(c);
  json records = json::array();
  for (const auto& spec : specs) {
    const double ops = complexity(code, spec).ops_per_info_bit();
    const SnrSearchResult found = find_snr_at_bler(code, spec, search);
    records.push_back(sweep_record(spec.to_string(), ops, gap_to_csl(code, found.snr_db)));
  }
  write_output(c.json_path, records.dump(2) + "\n", out);
}

void cmd_pareto(const std::string& input, const std::string& output, std::ostream& out) {
  std::ifstream in(input);
  if (!in) throw std::runtime_error("cannot read " + input);
  std::vector<SweepPoint> points;
  try {
    const json doc = json::parse(in);
    for (const auto& rec : doc)
      points.push_back({rec.at("decoder_spec").get<std::string>(), rec.at("ops_per_info_bit").get<double>(),
                        rec.at("gap_db").get<double>()});
  } catch (const json::exception& e) {
    throw std::runtime_error("malformed sweep records in " + input + ": " + e.what());
  }
  json records = json::array();
  for (const auto& p : pareto_frontier(points)) records.push_back(sweep_record(p.decoder_spec, p.ops_per_info_bit, p.gap_db));
  write_output(output, records.dump(2) + "\n", out);
}

void cmd_first_errors(int r, int m, double snr, std::uint64_t trials, std::uint64_t seed, unsigned threads, std::ostream& out) {
  const FirstErrorProfile profile = first_error_profile(RmCode(r, m), snr, trials, seed, threads);
  out << "errors " << profile.errors << " of " << profile.trials << " blocks\n";
  for (const auto& [address, fraction] : profile.ranked())
    out << std::left << std::setw(14) << address.to_string() << fixed(100.0 * fraction, 2) << "%\n";
}

void cmd_heuristic(int r, int m, int max_size, const std::string& budget_spec, std::ostream& out) {
  const RmCode code(r, m);
  std::optional<std::uint64_t> budget;
  if (!budget_spec.empty()) budget = complexity(code, DecoderSpec::parse(budget_spec)).total_ops;
  for (const auto& dist : enumerate_heuristic_distributions(code, max_size, budget))
    out << std::left << std::setw(40) << spec_for(dist).to_string() << fixed(ops_per_info_bit(chi_ca(code, dist), code), 3) << "\n";
}

}  // namespace

double parse_llr(const std::string& text) {
  const std::string t = lower(text == kNegInfMarker ? "-inf" : text);
  if (t == "inf" || t == "+inf" || t == "infinity" || t == "+infinity") return std::numeric_limits<double>::infinity();
  if (t == "-inf" || t == "-infinity") return -std::numeric_limits<double>::infinity();
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(t, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("malformed LLR value: " + text);
  }
  if (used != t.size() || std::isnan(value)) throw std::invalid_argument("malformed LLR value: " + text);
  return value;
}

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (const auto& a : raw_args) args.push_back(lower(a) == "-inf" || lower(a) == "-infinity" ? kNegInfMarker : a);

  CLI::App app{"Reed-Muller decoding laboratory", "rmlab"};
  app.require_subcommand(1);

  int r = 0, m = 0;
  std::string message, spec, input, output, budget;
  std::vector<std::string> llrs;
  std::uint64_t seed = 1, trials = 100000;
  unsigned threads = 0;
  double snr = 4.0;
  bool json_only = false, heuristic = false;
  int max_size = 7;
  ConfigFlags sim_flags, sweep_flags;

  auto* encode_cmd = app.add_subcommand("encode", "encode a message (bits in basis order 1; x0..x_{m-1}; x0x1, ...)");
  encode_cmd->add_option("r", r)->required();
  encode_cmd->add_option("m", m)->required();
  encode_cmd->add_option("message", message, "0/1 string of length k(r,m)")->required();

  auto* decode_cmd = app.add_subcommand("decode", "decode one LLR vector");
  decode_cmd->add_option("r", r)->required();
  decode_cmd->add_option("m", m)->required();
  decode_cmd->add_option("decoder", spec, "gmc | ml | scl:L | ae:N | ca:{(addr,size),...}")->required();
  decode_cmd->add_option("llr", llrs, "2^m LLR values; inf and -inf accepted")->required();
  decode_cmd->add_option("--ensemble-seed", seed, "automorphism ensemble seed");

  auto* complexity_cmd = app.add_subcommand("complexity", "worst-case operation count");
  complexity_cmd->add_option("r", r)->required();
  complexity_cmd->add_option("m", m)->required();
  complexity_cmd->add_option("decoder", spec)->required();
  complexity_cmd->add_flag("--json", json_only, "print only the JSON record");

  auto* simulate_cmd = app.add_subcommand("simulate", "Monte Carlo BLER at fixed SNR points (CSV)");
  sim_flags.attach(*simulate_cmd, false);

  auto* sweep_cmd = app.add_subcommand("sweep", "gap to the constrained Shannon limit per decoder (JSON)");
  sweep_flags.attach(*sweep_cmd, true);
  sweep_cmd->add_flag("--heuristic", heuristic, "add every heuristic rightmost CA decoder");
  sweep_cmd->add_option("--budget", budget, "decoder spec whose complexity bounds the heuristic set");
  sweep_cmd->add_option("--max-size", max_size, "largest heuristic ensemble size");

  auto* pareto_cmd = app.add_subcommand("pareto", "Pareto frontier of sweep records");
  pareto_cmd->add_option("input", input, "JSON array of sweep records")->required()->check(CLI::ExistingFile);
  pareto_cmd->add_option("-o,--output", output, "write here instead of stdout");

  auto* first_cmd = app.add_subcommand("first-errors", "first-error leaf profile of GMC");
  first_cmd->add_option("r", r)->required();
  first_cmd->add_option("m", m)->required();
  first_cmd->add_option("--snr", snr, "SNR in dB");
  first_cmd->add_option("--trials", trials, "number of blocks");
  first_cmd->add_option("--seed", seed, "channel seed");
  first_cmd->add_option("--threads", threads, "worker threads (0 = all cores)");

  auto* heuristic_cmd = app.add_subcommand("heuristic", "list heuristic rightmost CA distributions");
  heuristic_cmd->add_option("r", r)->required();
  heuristic_cmd->add_option("m", m)->required();
  heuristic_cmd->add_option("--max-size", max_size, "largest ensemble size");
  heuristic_cmd->add_option("--budget", budget, "decoder spec whose complexity bounds the set");

  auto* config_cmd = app.add_subcommand("config", "print the resolved run configuration");
  ConfigFlags config_flags;
  config_flags.attach(*config_cmd, true);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    err << (app.get_subcommands().empty() ? app.help() : app.get_subcommands().front()->help());
    return 1;
  }

  try {
    if (*encode_cmd) cmd_encode(r, m, message, out);
    else if (*decode_cmd) cmd_decode(r, m, spec, llrs, seed, out);
    else if (*complexity_cmd) cmd_complexity(r, m, spec, json_only, out);
    else if (*simulate_cmd) cmd_simulate(sim_flags.resolve(), out);
    else if (*sweep_cmd) cmd_sweep(sweep_flags.resolve(), heuristic, budget, max_size, out);
    else if (*pareto_cmd) cmd_pareto(input, output, out);
    else if (*first_cmd) cmd_first_errors(r, m, snr, trials, seed, threads, out);
    else if (*heuristic_cmd) cmd_heuristic(r, m, max_size, budget, out);
    else if (*config_cmd) out << render_run_config(config_flags.resolve());
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace rmlab::cli
