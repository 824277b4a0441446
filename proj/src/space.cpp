#include "caplab/space.hpp"

#include <algorithm>
#include <stdexcept>

namespace caplab {

FiniteCapSpace::FiniteCapSpace(std::string name, std::vector<std::string> points,
                               std::vector<Weight> matrix, bool centered)
	: name_(std::move(name)), carrier_(Carrier::make(std::move(points))), matrix_(std::move(matrix)),
	  centered_(centered)
{
	const auto n = carrier_->size();
	if (n == 0)
		throw std::invalid_argument("space '" + name_ + "' has no points");
	if (n > kMaxPoints)
		throw std::invalid_argument("space '" + name_ + "' exceeds " + std::to_string(kMaxPoints) +
		                            " points");
	if (matrix_.size() != n * n)
		throw std::invalid_argument("space '" + name_ + "': matrix is not " + std::to_string(n) + "x" +
		                            std::to_string(n));
}

FiniteCapSpace FiniteCapSpace::discrete(std::string name, std::vector<std::string> points)
{
	const auto n = points.size();
	std::vector<Weight> m(n * n, Weight::infinity());
	for (std::size_t i = 0; i < n; ++i)
		m[i * n + i] = Weight();
	return FiniteCapSpace(std::move(name), std::move(points), std::move(m));
}

PointId FiniteCapSpace::point(std::string_view name) const
{
	if (auto p = carrier_->find(name))
		return *p;
	throw std::invalid_argument("unknown point '" + std::string(name) + "' in space '" + name_ + "'");
}

Weight FiniteCapSpace::limit(PointSet a, PointId x) const
{
	const Weight* best = nullptr;
	const Weight* row = &matrix_[x * size()];
	for (PointId p : a)
		if (!best || *best < row[p])
			best = &row[p];
	return best ? *best : Weight();
}

Weight FiniteCapSpace::limit(const PrincipalFilter& f, PointId x) const
{
	return limit(to_set(f), x);
}

PointSet FiniteCapSpace::enlarge(PointSet a, const Weight& eps) const
{
	PointSet out;
	for (PointId x = 0; x < size(); ++x)
		for (PointId p : a)
			if (d(x, p) <= eps) {
				out.insert(x);
				break;
			}
	return out;
}

PrincipalFilter FiniteCapSpace::enlarge(const PrincipalFilter& f, const Weight& eps) const
{
	return to_filter(enlarge(to_set(f), eps));
}

std::vector<Weight> FiniteCapSpace::grid() const
{
	std::vector<Weight> g = matrix_;
	g.push_back(Weight());
	g.push_back(Weight::infinity());
	std::sort(g.begin(), g.end());
	g.erase(std::unique(g.begin(), g.end()), g.end());
	return g;
}

bool FiniteCapSpace::is_conv_embedded() const
{
	return std::all_of(matrix_.begin(), matrix_.end(),
	                   [](const Weight& w) { return w.is_zero() || w.is_infinite(); });
}

FiniteCapSpace FiniteCapSpace::subspace(PointSet s) const
{
	return subspace(s, name_ + "|sub");
}

FiniteCapSpace FiniteCapSpace::subspace(PointSet s, std::string name) const
{
	if (s.empty())
		throw std::invalid_argument("subspace of '" + name_ + "' on the empty set");
	if (!s.subset_of(points()))
		throw std::invalid_argument("subspace points outside '" + name_ + "'");
	std::vector<std::string> pts;
	std::vector<Weight> m;
	for (PointId x : s)
		pts.push_back(point_name(x));
	for (PointId x : s)
		for (PointId a : s)
			m.push_back(d(x, a));
	return FiniteCapSpace(std::move(name), std::move(pts), std::move(m), centered_);
}

FiniteCapSpace FiniteCapSpace::coreflection() const
{
	FiniteCapSpace c = *this;
	c.name_ = "c(" + name_ + ")";
	for (auto& w : c.matrix_)
		w = w.is_zero() ? Weight() : Weight::infinity();
	return c;
}

FiniteCapSpace FiniteCapSpace::reflection() const
{
	FiniteCapSpace r = *this;
	r.name_ = "r(" + name_ + ")";
	for (auto& w : r.matrix_)
		w = w.is_finite() ? Weight() : Weight::infinity();
	return r;
}

PointSet FiniteCapSpace::to_set(const PrincipalFilter& f) const
{
	if (!same_carrier(f.carrier(), carrier_))
		throw std::invalid_argument("filter is not on the carrier of '" + name_ + "'");
	PointSet s;
	for (PointId p : f.points())
		s.insert(p);
	return s;
}

PrincipalFilter FiniteCapSpace::to_filter(PointSet s) const
{
	PrincipalFilter::Core core(size());
	for (PointId p : s)
		core.set(p);
	return PrincipalFilter(carrier_, std::move(core));
}

std::string FiniteCapSpace::format_set(PointSet s) const
{
	std::string out = "{";
	bool first = true;
	for (PointId p : s) {
		if (!first)
			out += ",";
		out += point_name(p);
		first = false;
	}
	return out + "}";
}

bool operator==(const FiniteCapSpace& a, const FiniteCapSpace& b)
{
	return a.name_ == b.name_ && *a.carrier_ == *b.carrier_ && a.matrix_ == b.matrix_ &&
	       a.centered_ == b.centered_;
}

ValidationReport validate(const FiniteCapSpace& space)
{
	ValidationReport r;
	for (PointId p = 0; p < space.size(); ++p)
		r.points.push_back(space.point_name(p));
	r.grid = space.grid();
	if (space.centered())
		for (PointId x = 0; x < space.size(); ++x)
			if (!space.d(x, x).is_zero())
				r.violations.push_back({x, x, "centered space requires lambda(" + space.point_name(x) +
				                                   ", " + space.point_name(x) + ") = 0, found " +
				                                   space.d(x, x).to_string()});
	r.valid = r.violations.empty();
	return r;
}

SpaceMap::SpaceMap(std::string name_, FiniteCapSpace source_, FiniteCapSpace target_,
                   std::vector<PointId> assignment_)
	: name(std::move(name_)), source(std::move(source_)), target(std::move(target_)),
	  assignment(std::move(assignment_))
{
	if (assignment.size() != source.size())
		throw std::invalid_argument("map '" + name + "' is not total on its source");
	for (PointId y : assignment)
		if (y >= target.size())
			throw std::invalid_argument("map '" + name + "' leaves its target");
}

PointSet SpaceMap::image(PointSet b) const
{
	PointSet out;
	for (PointId x : b)
		out.insert(assignment[x]);
	return out;
}

PointMap SpaceMap::point_map() const
{
	return PointMap{source.carrier(), target.carrier(), assignment};
}

SpaceMap identity_map(const FiniteCapSpace& from, const FiniteCapSpace& to)
{
	if (from.size() != to.size())
		throw std::invalid_argument("identity between spaces of different sizes");
	std::vector<PointId> id(from.size());
	for (PointId p = 0; p < id.size(); ++p)
		id[p] = to.point(from.point_name(p));
	return SpaceMap("id", from, to, std::move(id));
}

} // namespace caplab
