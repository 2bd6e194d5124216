#pragma once

// Named property suites over the bundled corpora. Each check reports one
// line: id, status and a witness when it fails.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace cgw {

struct RunConfig {
  std::uint64_t seed = 1;
  unsigned copies = 2;       // k
  std::size_t max_len = 12;  // L
  unsigned nat_max = 8;
  std::size_t fuel = 10000;
  std::size_t count = 0;  // corpus size; 0 picks the suite's default
  std::string data_dir = CGW_DATA_DIR;
  int jobs = 1;
};

struct CheckLine {
  enum class Status { Pass, Fail, Info };
  std::string id;
  Status status = Status::Pass;
  std::string witness;
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckLine> checks;
  std::size_t passed() const;
  std::size_t failed() const;
  bool ok() const { return failed() == 0; }
};

const std::vector<std::string>& suite_names();

// Throws std::invalid_argument for an unknown suite and std::runtime_error
// for a malformed corpus file.
SuiteReport run_suite(const std::string& name, const RunConfig& cfg);

std::string check_status_name(CheckLine::Status s);
// plain: "id  status  witness" aligned; tsv: tab separated. A closing
// summary line counts passes and failures.
std::string format_report(const SuiteReport& r, bool tsv);

}  // namespace cgw
