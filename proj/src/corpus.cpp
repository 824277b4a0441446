#include "caplab/corpus.hpp"

#include <stdexcept>

#include "caplab/homspace.hpp"
#include "caplab/properties.hpp"

namespace caplab {

std::uint64_t SplitMix64::next()
{
	std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
	z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
	z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
	return z ^ (z >> 31);
}

std::uint64_t SplitMix64::below(std::uint64_t n)
{
	if (n == 0)
		throw std::invalid_argument("SplitMix64::below(0)");
	const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
	for (;;) {
		std::uint64_t v = next();
		if (v < limit)
			return v % n;
	}
}

std::vector<Weight> default_entry_grid()
{
	return {Weight(0), Weight(Rational(1, 2)), Weight(1), Weight(2), Weight(5), Weight::infinity()};
}

std::vector<std::string> point_names(std::size_t n)
{
	std::vector<std::string> out;
	for (std::size_t i = 0; i < n; ++i)
		out.push_back(n <= 26 ? std::string(1, static_cast<char>('a' + i)) : "p" + std::to_string(i));
	return out;
}

namespace {

FiniteCapSpace from_entries(std::string name, std::vector<std::string> points,
                            std::initializer_list<std::tuple<const char*, const char*, Weight>> entries)
{
	FiniteCapSpace s = FiniteCapSpace::discrete(std::move(name), std::move(points));
	for (const auto& [x, a, w] : entries)
		s.set(s.point(x), s.point(a), w);
	return s;
}

std::vector<Weight> finite_positive(const std::vector<Weight>& grid)
{
	std::vector<Weight> out;
	for (const auto& w : grid)
		if (w.is_finite() && !w.is_zero())
			out.push_back(w);
	if (out.empty())
		throw std::invalid_argument("entry grid has no finite positive value");
	return out;
}

FiniteCapSpace symmetric_closure(SplitMix64& rng, std::size_t n, const std::vector<Weight>& grid,
                                 std::string name, Tensor t)
{
	const auto values = finite_positive(grid);
	std::vector<Weight> m(n * n);
	for (std::size_t i = 0; i < n; ++i)
		for (std::size_t j = i + 1; j < n; ++j)
			m[i * n + j] = m[j * n + i] = rng.pick(values);
	// Shortest paths for +, minimax paths for max.
	for (std::size_t k = 0; k < n; ++k)
		for (std::size_t i = 0; i < n; ++i)
			for (std::size_t j = 0; j < n; ++j) {
				Weight via = combine(m[i * n + k], m[k * n + j], t);
				if (via < m[i * n + j])
					m[i * n + j] = via;
			}
	return FiniteCapSpace(std::move(name), point_names(n), std::move(m));
}

void require(bool ok, const FiniteCapSpace& s, const char* what)
{
	if (!ok)
		throw std::logic_error("generated space '" + s.name() + "' is not " + what);
}

} // namespace

FiniteCapSpace space_y3()
{
	return from_entries("Y3", {"a", "b", "y"}, {{"b", "a", 1}, {"y", "a", 1}, {"y", "b", 5}});
}

FiniteCapSpace space_m3()
{
	return from_entries("M3", {"p", "q", "r"},
	                    {{"p", "q", 1}, {"q", "p", 1}, {"q", "r", 1}, {"r", "q", 1}, {"p", "r", 2}, {"r", "p", 2}});
}

FiniteCapSpace space_u3()
{
	return from_entries("U3", {"p", "q", "r"},
	                    {{"p", "q", 1}, {"q", "p", 1}, {"q", "r", 2}, {"r", "q", 2}, {"p", "r", 2}, {"r", "p", 2}});
}

FiniteCapSpace space_x4()
{
	return from_entries("X4", {"s1", "s2", "t"}, {{"t", "s1", 0}});
}

ExtensionProblem problem_x4(Tensor t, Weight alpha)
{
	FiniteCapSpace x = space_x4();
	FiniteCapSpace y = space_m3();
	ExtensionProblem p{x, PointSet::single(0) | PointSet::single(1), std::vector<PointId>(3, kUnassigned), y, t,
	                   std::move(alpha)};
	p.f[x.point("s1")] = y.point("p");
	p.f[x.point("s2")] = y.point("q");
	p.check();
	return p;
}

FiniteCapSpace random_matrix(SplitMix64& rng, std::size_t n, const std::vector<Weight>& grid, std::string name)
{
	std::vector<Weight> m(n * n);
	for (std::size_t i = 0; i < n; ++i)
		for (std::size_t j = 0; j < n; ++j)
			m[i * n + j] = i == j ? Weight() : rng.pick(grid);
	FiniteCapSpace s(std::move(name), point_names(n), std::move(m));
	require(validate(s).valid, s, "centered");
	return s;
}

FiniteCapSpace random_metric(SplitMix64& rng, std::size_t n, const std::vector<Weight>& grid, std::string name)
{
	FiniteCapSpace s = symmetric_closure(rng, n, grid, std::move(name), Tensor::Plus);
	require(!is_regular(s, Tensor::Plus) && !is_diagonal(s, Tensor::Plus), s, "a metric");
	return s;
}

FiniteCapSpace random_ultrametric(SplitMix64& rng, std::size_t n, const std::vector<Weight>& grid,
                                  std::string name)
{
	FiniteCapSpace s = symmetric_closure(rng, n, grid, std::move(name), Tensor::Max);
	require(!is_regular(s, Tensor::Max) && !is_diagonal(s, Tensor::Max), s, "an ultrametric");
	return s;
}

FiniteCapSpace random_conv(SplitMix64& rng, std::size_t n, std::string name)
{
	std::vector<Weight> m(n * n);
	for (std::size_t i = 0; i < n; ++i)
		for (std::size_t j = 0; j < n; ++j)
			m[i * n + j] = i == j || rng.chance(1, 3) ? Weight() : Weight::infinity();
	FiniteCapSpace s(std::move(name), point_names(n), std::move(m));
	require(s.is_conv_embedded() && validate(s).valid, s, "{0,inf}-valued");
	return s;
}

SpaceMap random_map(SplitMix64& rng, const FiniteCapSpace& from, const FiniteCapSpace& to, std::string name)
{
	std::vector<PointId> v(from.size());
	for (auto& p : v)
		p = rng.below(to.size());
	return SpaceMap(std::move(name), from, to, std::move(v));
}

void for_each_space(std::size_t n, const std::vector<Weight>& values,
                    const std::function<void(const FiniteCapSpace&)>& fn)
{
	const std::size_t cells = n * (n - 1);
	std::vector<std::size_t> digit(cells, 0);
	std::size_t count = 0;
	for (;;) {
		std::vector<Weight> m(n * n);
		std::size_t k = 0;
		for (std::size_t i = 0; i < n; ++i)
			for (std::size_t j = 0; j < n; ++j)
				if (i != j)
					m[i * n + j] = values[digit[k++]];
		fn(FiniteCapSpace("E" + std::to_string(n) + "_" + std::to_string(count++), point_names(n), std::move(m)));
		std::size_t i = cells;
		while (i > 0) {
			if (++digit[i - 1] < values.size())
				break;
			digit[--i] = 0;
		}
		if (i == 0)
			return;
	}
}

std::vector<CorpusEntry> standard_corpus(std::uint64_t seed, std::size_t per_class)
{
	std::vector<CorpusEntry> out;
	for (auto s : {space_y3(), space_m3(), space_u3(), space_x4()})
		out.push_back({"crafted", s});
	SplitMix64 rng(seed);
	const auto grid = default_entry_grid();
	for (std::size_t i = 0; i < per_class; ++i) {
		const std::size_t n = 3 + rng.below(2);
		const std::string id = std::to_string(i);
		out.push_back({"random-matrix", random_matrix(rng, n, grid, "R" + id)});
		out.push_back({"random-metric", random_metric(rng, n, grid, "M" + id)});
		out.push_back({"random-ultrametric", random_ultrametric(rng, n, grid, "U" + id)});
		out.push_back({"random-conv", random_conv(rng, n, "C" + id)});
	}
	return out;
}

} // namespace caplab
