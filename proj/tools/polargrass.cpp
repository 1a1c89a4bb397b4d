// Command-line front end: polargrass <verb> [--input FILE]... [--output FILE] [options]
//
// Exit status: 0 when the report passes, 2 on a failed check or domain error,
// 1 on unreadable or malformed input.

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "polargrass/commands.hpp"

using namespace polargrass;

namespace {

std::uint64_t parse_seed(const std::string& text, const char* where) {
  try {
    std::size_t used = 0;
    if (text.empty() || text[0] == '-') throw std::invalid_argument("negative");
    const unsigned long long v = std::stoull(text, &used, 0);
    if (used != text.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ParseError(std::string(where) + ": '" + text + "' is not a non-negative integer");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Compatible triples, polarizations, Siegel and orthogonal Grassmannian charts"};
  std::string verb;
  std::vector<std::string> inputs;
  std::string output;
  std::string seed_text;
  RunOptions opts;

  std::string verbs_help = "one of:";
  for (const auto& v : verb_names()) verbs_help += " " + v;
  app.add_option("verb", verb, verbs_help)->required();
  app.add_option("--input,-i", inputs, "input JSON document; repeat to merge several");
  app.add_option("--output,-o", output, "write the report here instead of stdout");
  app.add_option("--tol-eq", opts.tol.eq, "equality tolerance")->capture_default_str();
  app.add_option("--tol-spd", opts.tol.spd, "positive-definiteness margin")->capture_default_str();
  app.add_option("--seed", seed_text, "64-bit seed (falls back to POLARGRASS_SEED)");
  app.add_option("--cutoff", opts.cutoff, "circle model cutoff N")->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--quadrature", opts.quadrature, "quadrature points K (0 selects 16N)")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (!is_verb(verb)) throw ParseError("unknown verb '" + verb + "'");
    if (!seed_text.empty()) {
      opts.seed = parse_seed(seed_text, "--seed");
      opts.seed_given = true;
    } else if (const char* env = std::getenv("POLARGRASS_SEED"); env && *env) {
      opts.seed = parse_seed(env, "POLARGRASS_SEED");
      opts.seed_given = true;
    }
    opts.tol.validate();

    std::vector<json> docs;
    for (const auto& path : inputs) docs.push_back(read_json_file(path));
    const json input = merge_inputs(docs);
    const json report = run_verb(verb, input, opts);
    const std::string text = dump_json(report);
    if (output.empty()) {
      std::cout << text;
    } else {
      write_text_file(output, text);
    }
    return report.at("pass").get<bool>() ? 0 : 2;
  } catch (const ParseError& e) {
    std::cerr << "polargrass: " << e.what() << '\n';
    return 1;
  } catch (const Error& e) {
    std::cerr << "polargrass: " << e.name() << ": " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "polargrass: " << e.what() << '\n';
    return 1;
  }
}
