// One PASS/FAIL line per acceptance criterion. Each criterion runs its suites
// with default settings (exact arithmetic, fixed seed) under a time limit;
// criteria 4 and 8 also pin the three-point example's values.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "caplab/constructions.hpp"
#include "caplab/corpus.hpp"
#include "caplab/suites.hpp"

using namespace caplab;

namespace {

struct Criterion {
	int number;
	std::string title;
	std::vector<std::string> suites;
	double limit_seconds;
	std::function<std::string()> pinned;  // empty string: pinned values hold
};

RegularityWitness y3_witness()
{
	auto y3 = space_y3();
	return extract_selection_witness(y3, Tensor::Plus, *is_regular(y3, Tensor::Plus));
}

std::string expect_gap(const ConstructionReport& r, const Weight& greater, const Weight& smaller)
{
	if (r.greater == greater && r.smaller == smaller && r.passed())
		return "";
	return "Y3/plus gives " + r.smaller.to_string() + " < " + r.greater.to_string() + ", expected " +
	       smaller.to_string() + " < " + greater.to_string();
}

} // namespace

int main(int argc, char** argv)
{
	std::uint64_t seed = 1;
	if (argc > 1)
		seed = std::stoull(argv[1]);

	const std::vector<Criterion> criteria = {
		{1, "selection form agrees with the enlargement form", {"equivalence"}, 30, {}},
		{2, "fast paths agree with definition-level search", {"oracle"}, 60, {}},
		{3, "m(f) <= c (+) c on regular targets", {"thm1"}, 60, {}},
		{4, "continuous-limits converse construction", {"thm1-converse"}, 60,
		 [] { return expect_gap(build_thm1_converse(space_y3(), y3_witness(), Tensor::Plus), Weight(5), Weight(1)); }},
		{5, "f(G) is contained in <G,F>^(alpha)", {"lemma"}, 30, {}},
		{6, "diagonal spaces have uniformly strict subspaces", {"diag-strict"}, 60, {}},
		{7, "admissible regular extensions satisfy m(g) <= alpha (+) alpha", {"extension"}, 120, {}},
		{8, "extension converse construction", {"extension-converse"}, 60,
		 [] { return expect_gap(build_extension_converse(space_y3(), y3_witness(), Tensor::Plus), Weight(5), Weight(2)); }},
		{9, "convergence fragment: regularity iff hom_min = 0 forces contraction", {"conv"}, 60, {}},
		{10, "m_+ <= m_max, hom meet axiom and antitonicity", {"order"}, 60, {}},
	};

	int failed = 0;
	for (const auto& c : criteria) {
		const auto start = std::chrono::steady_clock::now();
		std::size_t checks = 0, failures = 0;
		std::vector<std::string> notes;
		for (const auto& name : c.suites) {
			SuiteConfig config;
			config.suite = name;
			config.seed = seed;
			try {
				auto r = run_suite(config);
				checks += r.checks;
				failures += r.failures;
				if (!r.passed)
					for (const auto& line : r.transcript)
						notes.push_back(line);
			} catch (const std::exception& e) {
				++failures;
				notes.push_back(name + ": exception: " + e.what());
			}
		}
		if (c.pinned) {
			++checks;
			std::string miss;
			try {
				miss = c.pinned();
			} catch (const std::exception& e) {
				miss = std::string("exception: ") + e.what();
			}
			if (!miss.empty()) {
				++failures;
				notes.push_back(miss);
			}
		}
		const double seconds =
		    std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
		const bool in_time = seconds <= c.limit_seconds;
		if (!in_time)
			notes.push_back("took longer than the limit");
		const bool ok = failures == 0 && in_time;
		failed += ok ? 0 : 1;
		std::printf("%s criterion %d: %s (%zu checks, %zu failures, %.2f s of %.0f s)\n", ok ? "PASS" : "FAIL",
		            c.number, c.title.c_str(), checks, failures, seconds, c.limit_seconds);
		for (const auto& n : notes)
			std::printf("    %s\n", n.c_str());
		std::fflush(stdout);
	}
	std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
	return failed == 0 ? 0 : 1;
}
