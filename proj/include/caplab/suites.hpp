#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "caplab/weight.hpp"

namespace caplab {

enum class OutputFormat { Text, KeyValue };

struct SuiteConfig {
	std::string suite;
	std::size_t trials = 0;  // 0: the suite's default
	std::uint64_t seed = 1;
	std::size_t exhaustive = 3;             // equivalence/oracle: exhaustive part up to this many points
	std::optional<Tensor> tensor;           // nullopt: both
	std::vector<Weight> grid;               // empty: default_entry_grid()
	OutputFormat format = OutputFormat::Text;
};

struct SuiteResult {
	bool passed = true;
	std::size_t checks = 0;
	std::size_t failures = 0;
	std::vector<std::string> transcript;
};

/// equivalence, oracle, thm1, thm1-converse, lemma, diag-strict, extension,
/// extension-converse, conv, order.
const std::vector<std::string>& suite_names();

/// Runs a suite. Identical configs give identical transcripts. Throws
/// std::invalid_argument for an unknown suite.
SuiteResult run_suite(const SuiteConfig& config);

/// The `caplab verify ...` command line that reruns `config`.
std::string reproduction_command(const SuiteConfig& config);

} // namespace caplab
