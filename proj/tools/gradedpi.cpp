// gradedpi: command-line front end. Reports go to stdout as canonical JSON.

#include "gradedpi/report.hpp"

#include <CLI11.hpp>
#include <openssl/evp.h>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw gradedpi::SpecError(path, "cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// sha256 over (length, bytes) of each spec file in command-line order
std::string digest_of(const std::vector<std::string>& contents) {
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
  for (const auto& c : contents) {
    const std::string len = std::to_string(c.size()) + ":";
    EVP_DigestUpdate(ctx, len.data(), len.size());
    EVP_DigestUpdate(ctx, c.data(), c.size());
  }
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int n = 0;
  EVP_DigestFinal_ex(ctx, md, &n);
  EVP_MD_CTX_free(ctx);
  std::string hex = "sha256:";
  char buf[3];
  for (unsigned int i = 0; i < n; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", md[i]);
    hex += buf;
  }
  return hex;
}

int fail(const std::string& where, const std::string& message) {
  gradedpi::Json err{{"schema", 1}, {"error", {{"where", where}, {"message", message}}}};
  std::cout << err.dump(2) << "\n";
  std::cerr << "gradedpi: " << (where.empty() ? "" : where + ": ") << message << "\n";
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations with G-graded algebras and graded polynomial identities"};
  std::string command;
  std::vector<std::string> specs;
  gradedpi::CommandOptions opt;
  opt.workers = gradedpi::default_workers();
  std::uint64_t budget = 0;
  int border_budget = -1;
  std::string poly, profile, set, assign;

  std::string names;
  for (const auto& c : gradedpi::CommandRunner::commands()) names += (names.empty() ? "" : ", ") + c;
  app.add_option("command", command, "one of: " + names)->required();
  app.add_option("--spec", specs, "JSON spec file (repeatable)")->required()->check(CLI::ExistingFile);
  app.add_option("--algebra", opt.algebras, "algebra name (repeatable)");
  app.add_option("--poly", poly, "polynomial name");
  app.add_option("--max-degree", opt.max_degree, "largest degree for compare")->check(CLI::Range(1, 7));
  app.add_option("--nu", opt.nu, "number of folds")->check(CLI::Range(1, 8));
  app.add_option("--border-budget", border_budget, "border variables allowed in layout searches")
      ->check(CLI::Range(0, 64));
  app.add_option("--workers", opt.workers, "worker threads (default GRADEDPI_WORKERS or 1)")
      ->check(CLI::Range(1, 256));
  app.add_option("--budget", budget, "assignment / search-node budget");
  app.add_option("--profile", profile, "comma-separated variable degrees for kernel");
  app.add_option("--set", set, "comma-separated alternating ids for theorem-j");
  app.add_option("--assign", assign, "id=label,... fixed values for theorem-j");
  app.add_option("--trials", opt.trials, "random matrices for theorem-j")->check(CLI::Range(1, 10000));
  app.add_option("--seed", opt.seed, "seed for theorem-j matrices");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }
  if (!poly.empty()) opt.poly = poly;
  if (!profile.empty()) opt.profile = profile;
  if (!set.empty()) opt.set = set;
  if (!assign.empty()) opt.assign = assign;
  if (budget > 0) opt.budget = budget;
  if (border_budget >= 0) opt.border_budget = border_budget;

  try {
    gradedpi::Workspace ws;
    std::vector<std::string> contents;
    for (const auto& path : specs) {
      contents.push_back(read_file(path));
      gradedpi::Json doc;
      try {
        doc = gradedpi::Json::parse(contents.back());
      } catch (const gradedpi::Json::parse_error& e) {
        throw gradedpi::SpecError(path + "@byte" + std::to_string(e.byte), e.what());
      }
      ws.load(doc, path);
    }
    opt.digest = digest_of(contents);
    gradedpi::CommandRunner runner(ws, opt);
    const auto result = runner.run(command);
    std::cout << result.report.dump(2) << "\n";
    return result.exit_code;
  } catch (const gradedpi::SpecError& e) {
    return fail(e.where, e.message);
  } catch (const gradedpi::UsageError& e) {
    return fail("", e.what());
  } catch (const std::exception& e) {
    return fail("", e.what());
  }
}
