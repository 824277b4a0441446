#include "caplab/extension.hpp"

#include <stdexcept>

#include "caplab/homspace.hpp"
#include "caplab/properties.hpp"

namespace caplab {

SpaceMap ExtensionProblem::restricted_map() const
{
	std::vector<PointId> values;
	for (PointId p : s)
		values.push_back(f.at(p));
	SpaceMap m("f", x.subspace(s, x.name() + "|S"), y, std::move(values));
	m.ambient_name = x.name();
	m.embedding.assign(s.begin(), s.end());
	return m;
}

void ExtensionProblem::check() const
{
	if (s.empty())
		throw std::invalid_argument("extension problem with empty S");
	if (!s.subset_of(x.points()))
		throw std::invalid_argument("S is not a subset of X");
	if (f.size() != x.size())
		throw std::invalid_argument("f must be indexed by the points of X");
	for (PointId p : s)
		if (f[p] >= y.size())
			throw std::invalid_argument("f is not defined at " + x.point_name(p));
	if (!is_contraction(restricted_map()))
		throw std::invalid_argument("f is not a contraction on S");
}

ExtensionProblem make_extension_problem(const FiniteCapSpace& x, const SpaceMap& f, Tensor t,
                                        Weight alpha)
{
	ExtensionProblem p{x, {}, std::vector<PointId>(x.size(), kUnassigned), f.target, t, std::move(alpha)};
	for (PointId i = 0; i < f.source.size(); ++i) {
		PointId at = f.embedding.empty() ? x.point(f.source.point_name(i)) : f.embedding[i];
		p.s.insert(at);
		p.f[at] = f(i);
	}
	p.check();
	return p;
}

PointSet candidate_targets(const ExtensionProblem& p, PointId x)
{
	PointSet targets = p.y.points();
	for (const Weight& eps : p.x.grid()) {
		if (eps.is_infinite())
			continue;
		for_each_nonempty_subset(p.s, [&](PointSet b) {
			if (targets.empty() || eps < p.x.limit(b, x))
				return;
			PointSet fb;
			for (PointId q : b)
				fb.insert(p.f[q]);
			for (PointId y : targets)
				if (eps < p.y.limit(fb, y))
					targets = targets - PointSet::single(y);
		});
	}
	return targets;
}

PointSet extension_domain(const ExtensionProblem& p)
{
	PointSet out;
	for (PointId x : p.x.enlarge(p.s, p.alpha))
		if (!candidate_targets(p, x).empty())
			out.insert(x);
	if (!p.s.subset_of(out))
		throw std::logic_error("extension domain does not contain S; is f a contraction?");
	return out;
}

std::vector<ExtensionCandidate> enumerate_extensions(const ExtensionProblem& p, bool regular_only,
                                                     std::size_t cap)
{
	const PointSet domain = extension_domain(p);
	const PointSet reg = regularity_points(p.y, p.tensor);

	std::vector<PointId> free_points;
	std::vector<std::vector<PointId>> choices;
	for (PointId x : domain - p.s) {
		free_points.push_back(x);
		PointSet targets = candidate_targets(p, x);
		if (regular_only)
			targets = targets & reg;
		choices.emplace_back(targets.begin(), targets.end());
	}
	if (regular_only)
		for (PointId x : p.s)
			if (!reg.contains(p.f[x]))
				return {};

	std::size_t total = 1;
	for (const auto& c : choices) {
		if (c.empty())
			return {};
		if (total > cap / c.size())
			throw std::length_error("more than " + std::to_string(cap) + " admissible extensions");
		total *= c.size();
	}

	std::vector<ExtensionCandidate> out;
	out.reserve(total);
	std::vector<std::size_t> digit(choices.size(), 0);
	for (std::size_t n = 0; n < total; ++n) {
		ExtensionCandidate c;
		c.domain = domain;
		c.g.assign(p.x.size(), kUnassigned);
		for (PointId x : p.s)
			c.g[x] = p.f[x];
		for (std::size_t i = 0; i < free_points.size(); ++i)
			c.g[free_points[i]] = choices[i][digit[i]];
		c.regular = true;
		for (PointId x : domain)
			c.regular = c.regular && reg.contains(c.g[x]);
		out.push_back(std::move(c));
		for (std::size_t i = choices.size(); i-- > 0;) {
			if (++digit[i] < choices[i].size())
				break;
			digit[i] = 0;
		}
	}
	return out;
}

SpaceMap extension_map(const ExtensionProblem& p, const ExtensionCandidate& g)
{
	std::vector<PointId> values;
	for (PointId x : g.domain)
		values.push_back(g.g.at(x));
	SpaceMap m("g", p.x.subspace(g.domain, p.x.name() + "|h"), p.y, std::move(values));
	m.ambient_name = p.x.name();
	m.embedding.assign(g.domain.begin(), g.domain.end());
	return m;
}

ExtensionReport verify_extension_theorem(const ExtensionProblem& p)
{
	ExtensionReport r;
	r.bound = combine(p.alpha, p.alpha, p.tensor);
	if (auto w = is_strict(p.x, p.s, p.alpha, p.tensor, false)) {
		r.precondition_failure = "S is not " + p.alpha.to_string() + "-" + std::string(to_string(p.tensor)) +
		                         "-strict: B = " + p.x.format_set(w->b) +
		                         (w->x ? " at " + p.x.point_name(*w->x) : std::string());
		return r;
	}
	r.precondition = true;
	r.domain = extension_domain(p);
	r.extensions = enumerate_extensions(p, true);
	for (const auto& g : r.extensions) {
		r.defaults.push_back(contraction_default(extension_map(p, g), p.tensor));
		r.holds = r.holds && r.defaults.back() <= r.bound;
	}
	return r;
}

} // namespace caplab
