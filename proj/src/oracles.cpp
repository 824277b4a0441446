#include "caplab/oracles.hpp"

#include <algorithm>
#include <stdexcept>

namespace caplab {

namespace {

std::vector<Weight> sorted_unique(std::vector<Weight> v)
{
	std::sort(v.begin(), v.end());
	v.erase(std::unique(v.begin(), v.end()), v.end());
	return v;
}

} // namespace

bool regular_by_definition(const FiniteCapSpace& y, Tensor t)
{
	bool ok = true;
	for (const Weight& eps : y.grid()) {
		if (eps.is_infinite())
			continue;
		for_each_nonempty_subset(y.points(), [&](PointSet a) {
			const PointSet enlarged = y.enlarge(a, eps);
			for (PointId p = 0; p < y.size() && ok; ++p)
				ok = y.limit(enlarged, p) <= combine(y.limit(a, p), eps, t);
		});
		if (!ok)
			return false;
	}
	return true;
}

bool diagonal_by_selection(const FiniteCapSpace& y, Tensor t, std::size_t max_core)
{
	const auto n = y.size();
	std::vector<PointSet> cores;
	for_each_nonempty_subset(y.points(), [&](PointSet s) {
		if (s.size() <= max_core)
			cores.push_back(s);
	});
	std::vector<PointSet> fs;
	for_each_nonempty_subset(y.points(), [&](PointSet f) { fs.push_back(f); });

	std::vector<std::size_t> pick(n, 0);
	for (;;) {
		Weight defect;
		for (PointId a = 0; a < n; ++a)
			defect = max(defect, y.limit(cores[pick[a]], a));
		for (PointSet f : fs) {
			PointSet compressed;
			for (PointId p : f)
				compressed = compressed | cores[pick[p]];
			for (PointId p = 0; p < n; ++p)
				if (combine(y.limit(f, p), defect, t) < y.limit(compressed, p))
					return false;
		}
		std::size_t i = n;
		while (i > 0) {
			if (++pick[i - 1] < cores.size())
				break;
			pick[--i] = 0;
		}
		if (i == 0)
			return true;
	}
}

Weight hom_limit_by_scan(const FunctionSpace& fs, const PrincipalFilter& filter, const std::vector<PointId>& f)
{
	const auto& x = fs.source();
	const auto& y = fs.target();
	std::vector<Weight> candidates = y.grid();
	const auto core = filter.points();
	for (const Weight& alpha : candidates) {
		bool ok = true;
		for_each_nonempty_subset(x.points(), [&](PointSet g) {
			if (!ok)
				return;
			PointSet eval;
			for (auto h : core)
				for (PointId b : g)
					eval.insert(fs.apply(h, b));
			for (PointId p = 0; p < x.size() && ok; ++p)
				ok = y.limit(eval, f[p]) <= max(x.limit(g, p), alpha);
		});
		if (ok)
			return alpha;
	}
	throw std::logic_error("hom_limit_by_scan: no candidate satisfies the defining condition");
}

Weight contraction_default_by_scan(const SpaceMap& f, Tensor t)
{
	const auto& x = f.source;
	const auto& y = f.target;
	std::vector<Weight> candidates = y.grid();
	for (const Weight& v : y.grid())
		for (const Weight& u : x.grid())
			if (v.is_finite() && u.is_finite() && u < v)
				candidates.push_back(Weight(v.value() - u.value()));
	for (const Weight& alpha : sorted_unique(std::move(candidates))) {
		bool ok = true;
		for_each_nonempty_subset(x.points(), [&](PointSet b) {
			PointSet fb;
			for (PointId p : b)
				fb.insert(f(p));
			for (PointId p = 0; p < x.size() && ok; ++p)
				ok = y.limit(fb, f(p)) <= combine(x.limit(b, p), alpha, t);
		});
		if (ok)
			return alpha;
	}
	throw std::logic_error("contraction_default_by_scan: no candidate satisfies the defining condition");
}

Weight hom_min_by_functions(const FiniteCapSpace& x, const FiniteCapSpace& y, const std::vector<PointId>& f)
{
	FunctionSpace fs(x, y);
	std::optional<Weight> best;
	for (std::size_t h = 0; h < fs.size(); ++h) {
		Weight v = hom_limit(fs, PrincipalFilter::point(fs.carrier(), h), f);
		if (!best || v < *best)
			best = v;
	}
	return *best;
}

Weight hom_min_by_filters(const FiniteCapSpace& x, const FiniteCapSpace& y, const std::vector<PointId>& f,
                          std::size_t max_functions)
{
	FunctionSpace fs(x, y, max_functions);
	if (fs.size() > 63)
		throw std::length_error("hom_min_by_filters: too many functions");
	std::optional<Weight> best;
	for_each_nonempty_subset(PointSet::all(fs.size()), [&](PointSet core) {
		PrincipalFilter::Core bits(fs.size());
		for (PointId h : core)
			bits.set(h);
		Weight v = hom_limit(fs, PrincipalFilter(fs.carrier(), bits), f);
		if (!best || v < *best)
			best = v;
	});
	return *best;
}

} // namespace caplab
