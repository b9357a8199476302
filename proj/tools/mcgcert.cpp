#include <CLI11.hpp>
#include <gmp.h>

#include <cctype>
#include <cstring>
#include <fstream>
#include <iostream>

#include "mcg/finite_sp.hpp"
#include "mcg/verifier.hpp"

using namespace mcg;
using nlohmann::json;

namespace
{

enum Exit { Ok = 0, ClaimFailed = 1, ConfigError = 2, IoError = 3, OverBudget = 4 };

struct ConfigFailure : std::invalid_argument
{
  using std::invalid_argument::invalid_argument;
};

struct IoFailure : std::runtime_error
{
  using std::runtime_error::runtime_error;
};

struct JobConfig
{
  std::string genus = "3..12";
  std::string suite = "all";
  std::string set = "four-involutions";
  std::string target = "all";
  std::int64_t prime = 2;
  std::string method = "auto";
  std::string out;
  bool json = false;
  std::uint64_t budget = Budget{}.max_sifts;
};

std::string fingerprint()
{
  std::string s = "mcgcert";
#ifdef __VERSION__
  s += " | cxx " __VERSION__;
#endif
  s += " | gmp " + std::string(gmp_version);
#ifdef _OPENMP
  s += " | openmp " + std::to_string(_OPENMP);
#endif
  return s;
}

std::vector<int> parse_genus(std::string const &text)
{
  int lo = 0;
  int hi = 0;
  try {
    auto const dots = text.find("..");
    std::size_t used = 0;
    if (dots == std::string::npos) {
      lo = hi = std::stoi(text, &used);
      if (used != text.size())
        throw std::invalid_argument(text);
    } else {
      lo = std::stoi(text.substr(0, dots), &used);
      if (used != dots)
        throw std::invalid_argument(text);
      auto const rest = text.substr(dots + 2);
      hi = std::stoi(rest, &used);
      if (used != rest.size())
        throw std::invalid_argument(text);
    }
  } catch (std::logic_error const &) {
    throw ConfigFailure("malformed genus '" + text + "'");
  }
  if (lo < kMinGenus)
    throw ConfigFailure("genus < 3 unsupported");
  if (hi < lo)
    throw ConfigFailure("empty genus range '" + text + "'");
  std::vector<int> out;
  for (int g = lo; g <= hi; ++g)
    out.push_back(g);
  return out;
}

GeneratorSymbol parse_target(std::string text, int genus)
{
  if (text.size() < 2 || !std::strchr("ABC", text[0]))
    throw ConfigFailure("target must be A_i, B_i, C_i or all");
  text[0] = static_cast<char>(std::tolower(static_cast<unsigned char>(text[0])));
  auto const c = parse_curve(text, genus);
  if (c.name() != text)
    throw ConfigFailure("target index out of range: " + text);
  return twist_symbol(c);
}

void write_file(std::string const &path, std::string const &text)
{
  std::ofstream f(path, std::ios::binary);
  if (!f || !(f << text) || !f.flush())
    throw IoFailure("cannot write " + path);
}

void emit(JobConfig const &cfg, json const &doc, std::string const &text)
{
  if (!cfg.out.empty())
    write_file(cfg.out, doc.dump(2) + "\n");
  if (cfg.json)
    std::cout << doc.dump(2) << "\n";
  else
    std::cout << fingerprint() << "\n" << text;
}

json single_or_array(std::vector<json> docs)
{
  if (docs.size() == 1)
    return std::move(docs.front());
  return json(std::move(docs));
}

int cmd_verify(JobConfig const &cfg)
{
  auto const genera = parse_genus(cfg.genus);
  auto const suite = parse_suite(cfg.suite);
  std::vector<json> docs;
  std::ostringstream text;
  bool pass = true;
  for (int g : genera) {
    auto const cert = run_suite(g, suite);
    pass = pass && cert.pass();
    docs.push_back(cert.to_json());
    text << "suite " << cert.suite << "  genus " << g << "\n";
    for (auto const &c : cert.claims)
      text << "  " << to_string(c.status) << "  " << c.id << "\n";
    text << "  verified " << cert.count(Status::Verified) << ", failed "
         << cert.count(Status::Failed) << ", skipped " << cert.count(Status::Skipped) << "\n";
  }
  text << (pass ? "PASS" : "FAIL") << "\n";
  emit(cfg, single_or_array(std::move(docs)), text.str());
  return pass ? Ok : ClaimFailed;
}

constexpr std::size_t kPrintLimit = 400;

int cmd_compile(JobConfig const &cfg)
{
  auto const genera = parse_genus(cfg.genus);
  auto const set_name = parse_set_name(cfg.set);
  std::vector<json> docs;
  std::ostringstream text;
  bool pass = true;
  for (int g : genera) {
    Representation const rep(g);
    Compiler compiler(rep, generating_set(set_name, g));
    std::vector<CompilationResult> results;
    if (cfg.target == "all")
      results = compiler.compile_all();
    else
      results.push_back(compiler.compile(parse_target(cfg.target, g)));

    json targets = json::array();
    text << "set " << to_string(set_name) << "  genus " << g << "\n";
    auto const &prog = compiler.program();
    for (auto const &r : results) {
      bool const ok = r.verified && compiler.alphabet_closed(r.element);
      pass = pass && ok;
      auto const name = r.target.curve_id().name();
      std::string const label(1, static_cast<char>(std::toupper(name[0])));
      auto const target = label + name.substr(1);
      json t{{"target", target},
             {"length", r.length.get_str()},
             {"generator_length", r.generator_length.get_str()},
             {"trace", r.trace},
             {"verified", ok}};
      text << target << "  length " << r.length.get_str() << "  generator-length "
           << r.generator_length.get_str() << "\n";
      if (r.generator_length <= kPrintLimit) {
        auto const word = prog.format_generators(r.element, kPrintLimit);
        t["word"] = word;
        text << "  word " << word << "\n";
      } else {
        auto const listing = prog.listing(r.element);
        t["program"] = listing;
        std::istringstream lines(listing);
        for (std::string line; std::getline(lines, line);)
          text << "  " << line << "\n";
      }
      text << "  trace";
      for (auto const &s : r.trace)
        text << " " << s;
      text << "\n  " << (ok ? "verified" : "NOT verified") << "\n";
      targets.push_back(std::move(t));
    }
    docs.push_back(json{{"set", to_string(set_name)},
                        {"genus", std::to_string(g)},
                        {"targets", std::move(targets)},
                        {"pass", pass}});
  }
  emit(cfg, single_or_array(std::move(docs)), text.str());
  return pass ? Ok : ClaimFailed;
}

int cmd_spcheck(JobConfig const &cfg)
{
  auto const genera = parse_genus(cfg.genus);
  auto const set_name = parse_set_name(cfg.set);
  if (!is_prime(cfg.prime) || cfg.prime >= (std::int64_t{1} << 31))
    throw ConfigFailure(std::to_string(cfg.prime) + " is not a prime below 2^31");
  auto const method = parse_method(cfg.method);
  Budget budget;
  budget.max_sifts = cfg.budget;
  std::vector<json> docs;
  std::ostringstream text;
  bool pass = true;
  for (int g : genera) {
    auto const r = check_full_generation_mod_p(set_name, g, cfg.prime, method, budget);
    pass = pass && r.verified();
    Certificate cert{"finite", g, json::object(), {}};
    cert.claims.push_back(ClaimRecord{"finite." + to_string(set_name) + ".p" +
                                          std::to_string(cfg.prime),
                                      r.kind, r.status, "finite symplectic quotient generation",
                                      r.evidence});
    docs.push_back(cert.to_json());
    text << "set " << to_string(set_name) << "  genus " << g << "  prime " << cfg.prime
         << "  method " << r.evidence["method"].get<std::string>() << "\n";
    if (r.evidence.contains("order"))
      text << "  order " << r.evidence["order"].get<std::string>() << "  expected "
           << r.evidence["expected_order"].get<std::string>() << "\n";
    else
      text << "  orbit " << r.evidence["orbit"].get<std::string>() << "  expected "
           << r.evidence["expected_orbit"].get<std::string>() << "  compiled witnesses "
           << r.evidence["compiled_witnesses"].get<std::string>() << "\n";
    text << "  " << to_string(r.status) << "\n";
  }
  emit(cfg, single_or_array(std::move(docs)), text.str());
  return pass ? Ok : ClaimFailed;
}

} // namespace

int main(int argc, char **argv)
{
  CLI::App app{"Certificates for involution generation of surface mapping class groups"};
  app.require_subcommand(1);
  JobConfig cfg;

  auto *verify = app.add_subcommand("verify", "run a claim suite and write a certificate");
  auto *compile = app.add_subcommand("compile", "compile Lickorish twists over a generating set");
  auto *spcheck = app.add_subcommand("spcheck", "check generation of Sp(2g, p)");

  for (auto *sub : {verify, compile, spcheck}) {
    sub->add_option("--genus", cfg.genus, "INT or INT..INT")->capture_default_str();
    sub->add_option("--out", cfg.out, "write the JSON document here");
    sub->add_flag("--json", cfg.json, "print the JSON document instead of text");
  }
  verify->add_option("--suite", cfg.suite)->capture_default_str();
  compile->add_option("--set", cfg.set)->capture_default_str();
  compile->add_option("--target", cfg.target, "A_i, B_i, C_i or all")->capture_default_str();
  spcheck->add_option("--set", cfg.set)->capture_default_str();
  spcheck->add_option("--prime", cfg.prime)->capture_default_str();
  spcheck->add_option("--method", cfg.method, "bsgs, orbit or auto")->capture_default_str();
  spcheck->add_option("--budget", cfg.budget, "maximum Schreier generator sifts")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const &e) {
    auto const code = app.exit(e);
    return code == 0 ? Ok : ConfigError;
  }

  try {
    if (*verify)
      return cmd_verify(cfg);
    if (*compile)
      return cmd_compile(cfg);
    return cmd_spcheck(cfg);
  } catch (BudgetExceeded const &e) {
    std::cerr << "budget exceeded: " << e.what() << "\n" << e.partial().dump(2) << "\n";
    return OverBudget;
  } catch (IoFailure const &e) {
    std::cerr << e.what() << "\n";
    return IoError;
  } catch (GenusError const &e) {
    std::cerr << e.what() << "\n";
    return ConfigError;
  } catch (VerificationFailure const &e) {
    std::cerr << "claim " << e.claim_id() << " failed: " << e.what() << "\n";
    return ClaimFailed;
  } catch (std::invalid_argument const &e) {
    std::cerr << e.what() << "\n";
    return ConfigError;
  } catch (std::domain_error const &e) {
    std::cerr << e.what() << "\n";
    return ConfigError;
  }
}
