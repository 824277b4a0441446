#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "caplab/extension.hpp"
#include "caplab/space.hpp"

namespace caplab {

/// SplitMix64 (Steele, Lea, Flood 2014): state += 0x9e3779b97f4a7c15, then
///   z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9
///   z = (z ^ (z >> 27)) * 0x94d049bb133111eb
///   z ^ (z >> 31)
/// `below(n)` reduces by rejection so every residue is equally likely.
class SplitMix64 {
public:
	explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

	std::uint64_t next();
	std::uint64_t below(std::uint64_t n);
	bool chance(std::uint64_t num, std::uint64_t den) { return below(den) < num; }

	template <class T>
	const T& pick(const std::vector<T>& from)
	{
		return from[below(from.size())];
	}

private:
	std::uint64_t state_;
};

/// {0, 1/2, 1, 2, 5, inf}.
std::vector<Weight> default_entry_grid();

/// Point names p0, p1, ... (or a, b, c, ... when fewer than 27).
std::vector<std::string> point_names(std::size_t n);

// Crafted spaces.
FiniteCapSpace space_y3();  // a, b, y; d(b,a)=1, d(y,a)=1, d(y,b)=5
FiniteCapSpace space_m3();  // path metric p - q - r with unit steps
FiniteCapSpace space_u3();  // ultrametric d(p,q)=1, d(q,r)=d(p,r)=2
FiniteCapSpace space_x4();  // s1, s2, t with d(t,s1)=0
/// X4 with S = {s1, s2}, f(s1)=p, f(s2)=q into M3.
ExtensionProblem problem_x4(Tensor t, Weight alpha);

// Random generators. Each revalidates its defining class and throws
// std::logic_error if the construction failed to produce it.
/// Centered, off-diagonal entries drawn uniformly from `grid`.
FiniteCapSpace random_matrix(SplitMix64& rng, std::size_t n, const std::vector<Weight>& grid,
                             std::string name);
/// Symmetric finite positive entries closed under + (shortest paths): +-regular, +-diagonal.
FiniteCapSpace random_metric(SplitMix64& rng, std::size_t n, const std::vector<Weight>& grid,
                             std::string name);
/// Symmetric finite positive entries closed under max: ∨-regular, ∨-diagonal.
FiniteCapSpace random_ultrametric(SplitMix64& rng, std::size_t n, const std::vector<Weight>& grid,
                                  std::string name);
/// Centered {0, inf}-valued matrix.
FiniteCapSpace random_conv(SplitMix64& rng, std::size_t n, std::string name);

/// A map with uniformly random values.
SpaceMap random_map(SplitMix64& rng, const FiniteCapSpace& from, const FiniteCapSpace& to,
                    std::string name = "f");

/// Calls fn for every centered space on n points whose off-diagonal entries
/// range over `values` (|values|^(n(n-1)) spaces, odometer order with the
/// last entry fastest).
void for_each_space(std::size_t n, const std::vector<Weight>& values,
                    const std::function<void(const FiniteCapSpace&)>& fn);

struct CorpusEntry {
	std::string tag;  // crafted, random-matrix, random-metric, random-ultrametric, random-conv
	FiniteCapSpace space;
};

/// Crafted spaces followed by `per_class` random spaces of each class with
/// 3 or 4 points.
std::vector<CorpusEntry> standard_corpus(std::uint64_t seed, std::size_t per_class);

} // namespace caplab
