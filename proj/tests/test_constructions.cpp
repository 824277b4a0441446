#include <doctest.h>

#include "caplab/constructions.hpp"
#include "caplab/corpus.hpp"
#include "oracles.hpp"

using namespace caplab;

namespace {

const Weight inf = Weight::infinity();

RegularityWitness y3_witness(Tensor t)
{
	auto y3 = space_y3();
	return extract_selection_witness(y3, t, *is_regular(y3, t));
}

/// Every entry-wise envelope agrees with the case definition on every core.
void check_faithful(const ConstructionReport& r, const FiniteCapSpace& y)
{
	for_each_nonempty_subset(r.x.points(), [&](PointSet g) {
		for (PointId at = 0; at < r.x.size(); ++at)
			CHECK(r.x.limit(g, at) == oracle::case_limit(r, y, g, at));
	});
}

} // namespace

TEST_CASE("carrier layout")
{
	WitnessCarrier lay{3, 2};
	CHECK(lay.size() == 9);
	CHECK(lay.pair(2, 1) == 5);
	CHECK(lay.index(0) == 6);
	CHECK(lay.index(1) == 7);
	CHECK(lay.infinity_point() == 8);
	CHECK(lay.pairs() == PointSet::all(6));
	CHECK(lay.indices() == (PointSet::single(6) | PointSet::single(7)));
}

TEST_CASE("thm1 construction on the three-point space")
{
	auto y3 = space_y3();
	for (Tensor t : {Tensor::Plus, Tensor::Max}) {
		auto r = build_thm1_converse(y3, y3_witness(t), t);
		CHECK(r.passed());
		CHECK(r.kind == "thm1");
		CHECK(r.x.name() == "thm1(Y3)");
		CHECK(r.x.size() == 5);
		CHECK(r.x.point_name(0) == "(a,a0)");
		CHECK(r.x.point_name(3) == "a0");
		CHECK(r.x.point_name(4) == "x_inf");
		CHECK(r.greater == Weight(5));
		CHECK(r.smaller == Weight(1));
		CHECK(r.smaller < r.greater);
		CHECK(classify(r.x).topological);
		// f is the projection on pairs, l at the index point and y0 at x_inf.
		CHECK(r.f.assignment == std::vector<PointId>{0, 1, 2, 1, 2});
		// F0 has one map per choice in S(a) = {a}.
		REQUIRE(r.filter);
		CHECK(r.filter->core().count() == 1);
		CHECK(hom_min(r.x, y3, r.f.assignment) <= r.smaller);
		CHECK(contraction_default(r.f, t) == r.greater);
		check_faithful(r, y3);
	}
}

TEST_CASE("extension construction on the three-point space")
{
	auto y3 = space_y3();
	for (Tensor t : {Tensor::Plus, Tensor::Max}) {
		auto r = build_extension_converse(y3, y3_witness(t), t);
		CHECK(r.passed());
		CHECK(r.x.name() == "ext(Y3)");
		CHECK(r.x.size() == 5);
		CHECK(r.greater == Weight(5));
		CHECK(r.smaller == (t == Tensor::Plus ? Weight(2) : Weight(1)));
		CHECK(r.alpha == Weight(1));
		CHECK(r.s == PointSet::all(3));
		REQUIRE(r.g);
		CHECK(r.g->assignment == std::vector<PointId>{0, 1, 2, 1, 2});
		CHECK_FALSE(is_contraction(*r.g));
		// The extension bound fails: m(g) exceeds α ⊕ α.
		CHECK(combine(r.alpha, r.alpha, t) < contraction_default(*r.g, t));
		check_faithful(r, y3);
	}
}

TEST_CASE("constructions from selection-search witnesses")
{
	// Larger index sets from the search, on every non-regular 3-point {0,1,inf} space.
	std::size_t built = 0;
	for_each_space(3, {Weight(0), Weight(1), inf}, [&](const FiniteCapSpace& y) {
		for (Tensor t : {Tensor::Plus, Tensor::Max}) {
			auto w = check_selection_regularity(y, t, 2);
			CHECK(w.has_value() == is_regular(y, t).has_value());
			if (!w || built > 400)
				continue;
			++built;
			auto a = build_thm1_converse(y, *w, t);
			auto b = build_extension_converse(y, *w, t);
			CHECK(a.passed());
			CHECK(b.passed());
			CHECK(a.x.size() == (y.size() + 1) * w->size() + 1);
			CHECK(a.smaller < a.greater);
			CHECK(b.smaller < b.greater);
			check_faithful(a, y);
			check_faithful(b, y);
		}
	});
	CHECK(built > 100);
}

TEST_CASE("a two-index witness")
{
	// Same violation as the extracted witness, plus an extra label outside H
	// with its own selection: the carrier grows and every clause still holds.
	auto y3 = space_y3();
	auto w = y3_witness(Tensor::Plus);
	w.labels.push_back("extra");
	w.l.push_back(y3.point("y"));
	w.selection.push_back(PointSet::single(y3.point("y")));
	w.h.push_back(false);
	auto r = build_extension_converse(y3, w, Tensor::Plus);
	CHECK(r.passed());
	CHECK(r.x.size() == 9);
	CHECK(r.x.point_name(7) == "a1");
	check_faithful(r, y3);
	auto q = build_thm1_converse(y3, w, Tensor::Plus);
	CHECK(q.passed());
	check_faithful(q, y3);
}

TEST_CASE("regular inputs are rejected")
{
	auto m3 = space_m3();
	RegularityWitness w;
	w.labels = {"a"};
	w.l = {m3.point("q")};
	w.selection = {PointSet::single(m3.point("p"))};
	w.h = {true};
	w.y0 = m3.point("r");
	CHECK_THROWS_AS(build_thm1_converse(m3, w, Tensor::Plus), std::invalid_argument);
	CHECK_THROWS_AS(build_extension_converse(m3, w, Tensor::Plus), std::invalid_argument);
	RegularityWitness empty;
	CHECK_THROWS_AS(build_thm1_converse(m3, empty, Tensor::Plus), std::invalid_argument);
	CHECK_FALSE(find_and_refute(m3, Tensor::Plus));
	CHECK_FALSE(find_and_refute(FiniteCapSpace::discrete("O", {"o"}), Tensor::Max));
	CHECK_FALSE(find_and_refute(space_u3(), Tensor::Max));
}

TEST_CASE("non-regular convergence spaces")
{
	// {0,inf} targets: the thm1 space is topological, hom_min is 0 and f is not a contraction.
	std::size_t seen = 0;
	for_each_space(3, {Weight(0), inf}, [&](const FiniteCapSpace& y) {
		auto pair = find_and_refute(y, Tensor::Plus);
		if (!pair)
			return;
		++seen;
		const auto& r = pair->first;
		CHECK(classify(r.x).topological);
		CHECK(hom_min(r.x, y, r.f.assignment) == Weight(0));
		CHECK_FALSE(is_contraction(r.f));
		CHECK(r.greater == inf);
	});
	CHECK(seen > 0);
}

TEST_CASE("find_and_refute")
{
	auto pair = find_and_refute(space_y3(), Tensor::Plus);
	REQUIRE(pair);
	CHECK(pair->first.kind == "thm1");
	CHECK(pair->second.kind == "extension");
	CHECK(pair->first.witness.labels == std::vector<std::string>{"a0"});
	CHECK(find_and_refute(space_m3(), Tensor::Max));
}
