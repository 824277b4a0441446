#include <doctest.h>

#include "caplab/corpus.hpp"
#include "caplab/extension.hpp"
#include "caplab/homspace.hpp"
#include "caplab/properties.hpp"
#include "oracles.hpp"

using namespace caplab;

namespace {

const Weight inf = Weight::infinity();

/// A random problem with a contraction on a random nonempty proper subset.
ExtensionProblem random_problem(SplitMix64& rng, Tensor t, bool regular_target)
{
	const auto grid = default_entry_grid();
	const std::size_t n = 3 + rng.below(2);
	FiniteCapSpace x = rng.chance(1, 2) ? random_matrix(rng, n, grid, "X") : random_metric(rng, n, grid, "X");
	FiniteCapSpace y = !regular_target ? random_matrix(rng, 3, grid, "Y")
	                   : t == Tensor::Plus ? random_metric(rng, 3, grid, "Y")
	                                       : random_ultrametric(rng, 3, grid, "Y");
	PointSet s(1 + rng.below((std::uint64_t{1} << n) - 2));
	ExtensionProblem p{x, s, std::vector<PointId>(n, kUnassigned), y, t, rng.pick(x.grid())};
	const auto sub = x.subspace(s);
	for (int attempt = 0; attempt < 8; ++attempt) {
		SpaceMap f = random_map(rng, sub, y);
		if (!is_contraction(f))
			continue;
		std::size_t i = 0;
		for (PointId q : s)
			p.f[q] = f(i++);
		p.check();
		return p;
	}
	const PointId c = rng.below(y.size());
	for (PointId q : s)
		p.f[q] = c;
	p.check();
	return p;
}

} // namespace

TEST_CASE("extension problem validation")
{
	auto p = problem_x4(Tensor::Plus, Weight(0));
	auto empty = p;
	empty.s = PointSet();
	CHECK_THROWS_AS(empty.check(), std::invalid_argument);
	auto partial = p;
	partial.f[0] = kUnassigned;
	CHECK_THROWS_AS(partial.check(), std::invalid_argument);
	auto out_of_range = p;
	out_of_range.f[0] = 7;
	CHECK_THROWS_AS(out_of_range.check(), std::invalid_argument);
	// With d(s1, s2) = 0 the map would need d(p, q) = 0.
	auto tight = p;
	tight.x.set(0, 1, Weight(0));
	CHECK_THROWS_AS(tight.check(), std::invalid_argument);

	auto sub = p.restricted_map();
	CHECK(sub.source.size() == 2);
	auto again = make_extension_problem(p.x, sub, Tensor::Plus, Weight(0));
	CHECK(again.s == p.s);
	CHECK(again.f == p.f);
}

TEST_CASE("the three-point example")
{
	for (Tensor t : {Tensor::Plus, Tensor::Max})
		for (const Weight& alpha : {Weight(0), Weight(1), inf}) {
			auto p = problem_x4(t, alpha);
			const PointId tp = p.x.point("t");
			CHECK(candidate_targets(p, tp) == PointSet::single(p.y.point("p")));
			CHECK(candidate_targets(p, p.x.point("s1")) == PointSet::single(p.y.point("p")));
			CHECK(extension_domain(p) == p.x.points());
			auto all = enumerate_extensions(p, false);
			REQUIRE(all.size() == 1);
			CHECK(all[0].g == std::vector<PointId>{0, 1, 0});
			CHECK(is_contraction(extension_map(p, all[0])));
			CHECK_THROWS_AS(enumerate_extensions(p, false, 0), std::length_error);
			auto r = verify_extension_theorem(p);
			CHECK(r.precondition);
			CHECK(r.holds);
			CHECK(r.bound == combine(alpha, alpha, t));
		}
	// Without the zero entry t is only reached at α = ∞ and every point of M3 is a target.
	auto p = problem_x4(Tensor::Plus, Weight(0));
	p.x.set(2, 0, inf);
	CHECK(candidate_targets(p, 2) == p.y.points());
	CHECK(extension_domain(p) == p.s);
	p.alpha = inf;
	CHECK(extension_domain(p) == p.x.points());
	CHECK(enumerate_extensions(p, false).size() == 3);
}

TEST_CASE("extension map carries the ambient embedding")
{
	auto p = problem_x4(Tensor::Plus, Weight(0));
	auto g = enumerate_extensions(p, false).front();
	auto m = extension_map(p, g);
	CHECK(m.ambient_name == std::optional<std::string>("X4"));
	CHECK(m.embedding == std::vector<PointId>{0, 1, 2});
	CHECK(m.source.size() == 3);
}

TEST_CASE("candidate targets: finite grid suffices")
{
	SplitMix64 rng(41);
	for (int trial = 0; trial < 300; ++trial) {
		auto p = random_problem(rng, trial % 2 ? Tensor::Plus : Tensor::Max, false);
		for (PointId x = 0; x < p.x.size(); ++x)
			CHECK(candidate_targets(p, x) == oracle::refined_targets(p, x));
	}
}

TEST_CASE("domain properties")
{
	SplitMix64 rng(42);
	for (int trial = 0; trial < 200; ++trial) {
		auto p = random_problem(rng, Tensor::Plus, false);
		// f itself is a target on S.
		for (PointId q : p.s)
			CHECK(candidate_targets(p, q).contains(p.f[q]));
		// Monotone in α.
		PointSet previous;
		for (const Weight& alpha : p.x.grid()) {
			p.alpha = alpha;
			const PointSet d = extension_domain(p);
			CHECK(previous.subset_of(d));
			CHECK(p.s.subset_of(d));
			CHECK(d.subset_of(p.x.enlarge(p.s, alpha)));
			previous = d;
		}
		// Enumeration size is the product of target counts.
		p.alpha = Weight(0);
		std::size_t expected = 1;
		for (PointId x : extension_domain(p) - p.s)
			expected *= candidate_targets(p, x).size();
		auto all = enumerate_extensions(p, false);
		CHECK(all.size() == expected);
		for (const auto& g : all)
			for (PointId x = 0; x < p.x.size(); ++x) {
				if (p.s.contains(x))
					CHECK(g.g[x] == p.f[x]);
				else if (g.domain.contains(x))
					CHECK(candidate_targets(p, x).contains(g.g[x]));
				else
					CHECK(g.g[x] == kUnassigned);
			}
	}
}

TEST_CASE("S = X extends only to f")
{
	SplitMix64 rng(43);
	for (int trial = 0; trial < 100; ++trial) {
		auto p = random_problem(rng, Tensor::Plus, false);
		p.s = p.x.points();
		const PointId c = rng.below(p.y.size());
		p.f.assign(p.x.size(), c);
		CHECK(extension_domain(p) == p.x.points());
		CHECK(enumerate_extensions(p, false).size() == 1);
	}
}

TEST_CASE("regular targets: admissible extensions respect the bound")
{
	SplitMix64 rng(44);
	std::size_t confirmed = 0;
	for (int trial = 0; trial < 400; ++trial) {
		const Tensor t = trial % 2 ? Tensor::Plus : Tensor::Max;
		auto p = random_problem(rng, t, true);
		auto r = verify_extension_theorem(p);
		if (!r.precondition) {
			CHECK_FALSE(r.precondition_failure.empty());
			continue;
		}
		++confirmed;
		CHECK(r.holds);
		CHECK(r.extensions.size() == r.defaults.size());
		for (const auto& m : r.defaults)
			CHECK(m <= r.bound);
		// A regular target has every point regular: the regular-only list is the full list.
		CHECK(r.extensions.size() == enumerate_extensions(p, false).size());
	}
	CHECK(confirmed > 50);
}

TEST_CASE("regular-only enumeration drops non-regular values")
{
	// Y3 under + has no regularity points, so nothing survives the filter.
	auto y3 = space_y3();
	auto x = FiniteCapSpace::discrete("X", {"u", "v"});
	ExtensionProblem p{x, PointSet::single(0), {0, kUnassigned}, y3, Tensor::Plus, inf};
	p.check();
	CHECK(enumerate_extensions(p, false).size() == 3);
	CHECK(enumerate_extensions(p, true).empty());
}
