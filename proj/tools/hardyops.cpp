#include "hardyops/cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <iostream>

namespace {

using namespace hardyops;

struct Slot {
  const char* name;
  const char* help;
};

const std::map<std::string, std::pair<std::string, std::vector<Slot>>>& command_table() {
  static const std::map<std::string, std::pair<std::string, std::vector<Slot>>> t = {
      {"project", {"Riesz projection of a symbol", {{"f", "symbol"}, {"space", "H2 or H2perp (default H2)"}}}},
      {"apply",
       {"apply an operator expression to a symbol",
        {{"expr", "prefix expression, e.g. (compose (toeplitz \"z^-1\") (toeplitz \"z^1\"))"}, {"x", "symbol"}}}},
      {"check-product",
       {"is R_H1 R_H2 a GSIO, and its symbol", {{"H1", "f=..;u=..;g=..;v=.."}, {"H2", "f=..;u=..;g=..;v=.."}}}},
      {"check-commute", {"do R_H1 and R_H2 commute", {{"H1", "f=..;u=..;g=..;v=.."}, {"H2", "f=..;u=..;g=..;v=.."}}}},
      {"classify-commute",
       {"all commuting cases with constants", {{"H1", "f=..;u=..;g=..;v=.."}, {"H2", "f=..;u=..;g=..;v=.."}}}},
      {"check-isometry", {"is R_H an isometry", {{"H", "f=..;u=..;g=..;v=.."}}}},
      {"check-normal", {"is S_{f,g} normal", {{"f", "symbol"}, {"g", "symbol"}}}},
      {"check-quasinormal", {"is S_{f,g} quasinormal", {{"f", "symbol"}, {"g", "symbol"}}}},
      {"check-adtp",
       {"asymmetric dual truncated Toeplitz product",
        {{"phi", "symbol"},
         {"psi", "symbol"},
         {"a", "inner power of alpha"},
         {"b", "inner power of beta"},
         {"t", "inner power of theta"},
         {"a-zeros", "numeric mode: zeros of alpha as 're,im;...'"},
         {"b-zeros", "numeric mode: zeros of beta"},
         {"t-zeros", "numeric mode: zeros of theta"}}}},
      {"check-dtt-commute",
       {"do two dual truncated Toeplitz operators commute",
        {{"phi", "symbol"}, {"psi", "symbol"}, {"t", "inner power of theta"}}}},
      {"verify-numeric",
       {"compare two expressions on finite sections", {{"lhs", "prefix expression"}, {"rhs", "prefix expression (default 0)"}}}},
  };
  return t;
}

void write_once(const std::string& s, std::FILE* f) {
  std::fwrite(s.data(), 1, s.size(), f);
  std::fflush(f);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact decision procedures for operators on the Hardy space"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string mode_text;
  if (const char* env = std::getenv("HARDYOPS_MODE")) mode_text = env;
  std::string format = "json";
  long section = 32, pad = 0;
  unsigned seed = 0;
  bool timing = false;
  app.add_option("--mode", mode_text, "exact or numeric (default: HARDYOPS_MODE, else exact)");
  app.add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}));
  app.add_option("-n,--section", section, "finite-section size");
  app.add_option("--pad", pad, "section padding (0: from the symbols)");
  app.add_option("--seed", seed, "seed for randomized parts");
  app.add_flag("--timing", timing, "add wall-clock timing to the report");

  std::map<std::string, std::map<std::string, std::string>> values;
  std::map<std::string, CLI::App*> subs;
  for (const auto& [cmd, spec] : command_table()) {
    CLI::App* sub = app.add_subcommand(cmd, spec.first);
    subs[cmd] = sub;
    for (const Slot& s : spec.second) sub->add_option(std::string("--") + s.name, values[cmd][s.name], s.help);
  }

  std::string bench_sym = "z^-2 + 3 + 1/2*z";
  std::vector<long> sizes = {64, 512, 4096};
  int reps = 3;
  CLI::App* bench = app.add_subcommand("bench-fft", "dense vs FFT Toeplitz matvec timings as CSV");
  bench->add_option("--f", bench_sym, "symbol");
  bench->add_option("--sizes", sizes, "section sizes")->delimiter(',');
  bench->add_option("--reps", reps, "repetitions per size (best is kept)")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : cli::kInputError;
  }

  if (bench->parsed()) {
    try {
      write_once(cli::bench_fft_csv(parse_symbol(bench_sym), sizes, reps), stdout);
      return cli::kDecided;
    } catch (const std::invalid_argument& e) {
      write_once(std::string("error: ") + e.what() + "\n", stderr);
      return cli::kInputError;
    }
  }

  cli::JobSpec job;
  for (const auto& [cmd, sub] : subs) {
    if (!sub->parsed()) continue;
    job.command = cmd;
    for (const Slot& s : command_table().at(cmd).second)
      if (sub->count(std::string("--") + s.name)) job.inputs[s.name] = values[cmd][s.name];
  }
  job.section = section;
  job.pad = pad;
  job.seed = seed;
  job.timing = timing;
  try {
    job.mode = mode_text.empty() ? cli::Mode::Exact : cli::parse_mode(mode_text);
  } catch (const cli::InputError& e) {
    write_once(std::string("error: ") + e.what() + "\n", stderr);
    return cli::kInputError;
  }

  const cli::Outcome out = cli::run(job);
  write_once(cli::report_emit(out.report, format), stdout);
  if (out.report.contains("error"))
    write_once("error: " + out.report["error"]["message"].get<std::string>() + "\n", stderr);
  return out.exit_code;
}
