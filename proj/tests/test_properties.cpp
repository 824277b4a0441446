#include <doctest.h>

#include "caplab/corpus.hpp"
#include "caplab/oracles.hpp"
#include "caplab/properties.hpp"
#include "oracles.hpp"

using namespace caplab;

namespace {

const Weight inf = Weight::infinity();

std::vector<FiniteCapSpace> small_spaces()
{
	std::vector<FiniteCapSpace> out;
	const std::vector<Weight> values = {Weight(0), Weight(1), inf};
	for (std::size_t n = 1; n <= 3; ++n)
		for_each_space(n, values, [&](const FiniteCapSpace& s) { out.push_back(s); });
	return out;
}

/// {0,inf} matrices of the 4-point preorders: d(x, a) = 0 iff x <= a.
std::vector<FiniteCapSpace> preorder_spaces(std::size_t n)
{
	std::vector<FiniteCapSpace> out;
	const std::size_t cells = n * n;
	for (std::uint64_t rel = 0; rel < (std::uint64_t{1} << cells); ++rel) {
		auto le = [&](std::size_t x, std::size_t a) { return x == a || ((rel >> (x * n + a)) & 1U); };
		bool diag_clear = true;
		for (std::size_t i = 0; i < n; ++i)
			diag_clear = diag_clear && !((rel >> (i * n + i)) & 1U);
		if (!diag_clear)
			continue;
		bool transitive = true;
		for (std::size_t x = 0; x < n && transitive; ++x)
			for (std::size_t y = 0; y < n && transitive; ++y)
				for (std::size_t z = 0; z < n && transitive; ++z)
					if (le(x, y) && le(y, z) && !le(x, z))
						transitive = false;
		if (!transitive)
			continue;
		std::vector<Weight> m(cells);
		for (std::size_t x = 0; x < n; ++x)
			for (std::size_t a = 0; a < n; ++a)
				m[x * n + a] = le(x, a) ? Weight(0) : inf;
		out.emplace_back("T" + std::to_string(out.size()), point_names(n), std::move(m));
	}
	return out;
}

} // namespace

TEST_CASE("is_regular examples")
{
	auto y3 = space_y3();
	auto w = is_regular(y3, Tensor::Plus);
	REQUIRE(w);
	CHECK(y3.point_name(w->a) == "a");
	CHECK(y3.point_name(w->b) == "b");
	CHECK(y3.point_name(w->y) == "y");
	CHECK(w->lhs == Weight(5));
	CHECK(w->rhs == Weight(2));
	CHECK_FALSE(is_regular(space_m3(), Tensor::Plus));
	auto discrete = FiniteCapSpace::discrete("D", {"a", "b", "c"});
	CHECK_FALSE(is_regular(discrete, Tensor::Plus));
	CHECK_FALSE(is_regular(discrete, Tensor::Max));
}

TEST_CASE("regularity points")
{
	// In Y3 every point sees a violation: y through (a,b), and a and b
	// through inf entries, e.g. d(a,b) = inf > d(a,a) + d(b,a) = 1.
	auto y3 = space_y3();
	CHECK(regularity_points(y3, Tensor::Plus).empty());
	CHECK(y3.d(y3.point("a"), y3.point("b")) == inf);
	CHECK(regularity_points(space_m3(), Tensor::Plus) == space_m3().points());
	auto one = FiniteCapSpace::discrete("O", {"o"});
	CHECK(regularity_points(one, Tensor::Plus) == one.points());
	for (const auto& s : small_spaces())
		for (Tensor t : {Tensor::Plus, Tensor::Max})
			CHECK(!is_regular(s, t) == (regularity_points(s, t) == s.points()));
}

TEST_CASE("selection search examples")
{
	auto y3 = space_y3();
	auto w3 = check_selection_regularity(y3, Tensor::Plus, 3);
	REQUIRE(w3);
	CHECK(w3->size() == 1);
	CHECK(witness_sides(y3, Tensor::Plus, *w3) == std::pair{w3->lhs, w3->rhs});
	CHECK(w3->rhs < w3->lhs);
	CHECK(check_selection_regularity(y3, Tensor::Plus, 1));
	CHECK_FALSE(check_selection_regularity(space_m3(), Tensor::Plus, 3));
	CHECK_THROWS(check_selection_regularity(y3, Tensor::Plus, 0));

	// The documented |A| = 1 witness: A = {b}, l(b) = b, S(b) = {a}↑, H = {b}↑, y0 = y.
	RegularityWitness w;
	w.labels = {"b"};
	w.l = {y3.point("b")};
	w.selection = {PointSet::single(y3.point("a"))};
	w.h = {true};
	w.y0 = y3.point("y");
	CHECK(witness_sides(y3, Tensor::Plus, w) == std::pair{Weight(5), Weight(2)});
}

TEST_CASE("extract_selection_witness")
{
	auto y3 = space_y3();
	auto t = *is_regular(y3, Tensor::Plus);
	auto w = extract_selection_witness(y3, Tensor::Plus, t);
	CHECK(w.lhs == Weight(5));
	CHECK(w.rhs == Weight(2));
	CHECK(w.labels == std::vector<std::string>{"b"});
	auto wm = extract_selection_witness(y3, Tensor::Max, t);
	CHECK(wm.lhs == Weight(5));
	CHECK(wm.rhs == Weight(1));
	auto m3 = space_m3();
	CHECK_THROWS_AS(extract_selection_witness(m3, Tensor::Plus, RegularityTriple{0, 1, 2, {}, {}}),
	                std::logic_error);
}

TEST_CASE("selection search agrees with the literal search")
{
	// The literal search ranges over all H ⊆ A, labelled A and repeated pairs.
	for (const auto& s : small_spaces())
		for (Tensor t : {Tensor::Plus, Tensor::Max}) {
			const std::size_t k = s.size() <= 2 ? 3 : 2;
			CHECK(check_selection_regularity(s, t, k).has_value() == oracle::literal_selection_violation(s, t, k));
		}
}

TEST_CASE("is_diagonal examples")
{
	auto m3 = space_m3();
	CHECK_FALSE(is_diagonal(m3, Tensor::Plus));
	auto w = is_diagonal(m3, Tensor::Max);
	REQUIRE(w);
	CHECK(m3.point_name(w->x) == "q");
	CHECK(m3.point_name(w->y) == "p");
	CHECK(m3.point_name(w->c) == "r");
	CHECK(w->lhs == Weight(2));
	CHECK(w->rhs == Weight(1));
	CHECK(diagonal_by_selection(m3, Tensor::Plus));
	CHECK_FALSE(diagonal_by_selection(m3, Tensor::Max));
}

TEST_CASE("topologies on 4 points are diagonal")
{
	auto tops = preorder_spaces(4);
	CHECK(tops.size() == 355);  // number of preorders on a 4-element set
	for (const auto& s : tops)
		for (Tensor t : {Tensor::Plus, Tensor::Max}) {
			CHECK_FALSE(is_diagonal(s, t));
			CHECK(diagonal_by_selection(s, t, 2));
			CHECK(classify(s).topological);
		}
}

TEST_CASE("classify")
{
	auto c = classify(space_m3());
	CHECK(c.pre_approach);
	CHECK(c.approach);
	CHECK(c.regular);
	CHECK_FALSE(c.non_archimedean_approach);
	auto y = classify(space_y3());
	CHECK(y.pre_approach);
	CHECK_FALSE(y.regular);
	CHECK_FALSE(y.strongly_regular);
	CHECK(classify(space_y3().coreflection()).convergence_embedded);
	auto u = classify(space_u3());
	CHECK(u.strongly_regular);
	CHECK(u.non_archimedean_approach);
}

TEST_CASE("fast paths agree with definition-level oracles")
{
	for (const auto& s : small_spaces())
		for (Tensor t : {Tensor::Plus, Tensor::Max}) {
			CHECK(!is_regular(s, t) == regular_by_definition(s, t));
			CHECK(!is_diagonal(s, t) == diagonal_by_selection(s, t, 2));
		}
}

TEST_CASE("strong regularity implies regularity on the corpus")
{
	for (const auto& e : standard_corpus(21, 30))
		if (!is_regular(e.space, Tensor::Max))
			CHECK_FALSE(is_regular(e.space, Tensor::Plus));
}

TEST_CASE("strictness examples")
{
	auto y3 = space_y3();
	for (const auto& alpha : y3.grid())
		for (Tensor t : {Tensor::Plus, Tensor::Max}) {
			CHECK_FALSE(is_strict(y3, y3.points(), alpha, t, true));
			CHECK_FALSE(is_strict(y3, y3.points(), alpha, t, false));
		}
	CHECK_THROWS(is_strict(y3, PointSet(), Weight(0), Tensor::Plus, false));
	CHECK(is_strict_all(y3, y3.points(), Tensor::Plus, true));
}

TEST_CASE("diagonal spaces have uniformly strict subspaces")
{
	for (const auto& e : standard_corpus(22, 20))
		for (Tensor t : {Tensor::Plus, Tensor::Max}) {
			if (is_diagonal(e.space, t))
				continue;
			for_each_nonempty_subset(e.space.points(), [&](PointSet s) {
				for (const auto& alpha : e.space.grid())
					CHECK_FALSE(is_strict(e.space, s, alpha, t, true));
			});
		}
}

TEST_CASE("uniform strictness implies pointwise strictness")
{
	SplitMix64 rng(31);
	for (int trial = 0; trial < 200; ++trial) {
		auto x = random_matrix(rng, 4, default_entry_grid(), "X");
		PointSet s(1 + rng.below(15));
		const Weight alpha = rng.pick(x.grid());
		const Tensor t = trial % 2 ? Tensor::Plus : Tensor::Max;
		if (!is_strict(x, s, alpha, t, true))
			CHECK_FALSE(is_strict(x, s, alpha, t, false));
	}
}

TEST_CASE("a non-strict subspace of a 4-point convergence space")
{
	// Exhaustive search over {0,inf} matrices on 4 points and their subsets.
	// For {0,inf} spaces every finite grid level is 0.
	std::optional<std::pair<FiniteCapSpace, PointSet>> found;
	for_each_space(4, {Weight(0), inf}, [&](const FiniteCapSpace& x) {
		if (found)
			return;
		CHECK(x.grid().size() <= 2);
		for_each_nonempty_subset(x.points(), [&](PointSet s) {
			if (!found && is_strict(x, s, Weight(0), Tensor::Plus, false))
				found.emplace(x, s);
		});
	});
	REQUIRE(found);
	const auto& [x, s] = *found;
	auto w = is_strict(x, s, Weight(0), Tensor::Plus, false);
	REQUIRE(w);
	REQUIRE(w->x);
	// Certify the witness directly: no C ⊆ S with B ⊆ C^(0) and λ(C)(x) <= λ(B)(x).
	for_each_nonempty_subset(s, [&](PointSet c) {
		CHECK_FALSE((w->b.subset_of(x.enlarge(c, Weight(0))) && x.limit(c, *w->x) <= x.limit(w->b, *w->x)));
	});
	CHECK(is_strict(x, s, Weight(0), Tensor::Max, false));
	CHECK(is_diagonal(x, Tensor::Plus));  // diagonal spaces have no such subspace
}
