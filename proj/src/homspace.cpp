#include "caplab/homspace.hpp"

#include <stdexcept>

#include "caplab/properties.hpp"

namespace caplab {

namespace {

std::size_t checked_power(std::size_t base, std::size_t exp, std::size_t cap)
{
	std::size_t r = 1;
	for (std::size_t i = 0; i < exp; ++i) {
		if (base != 0 && r > cap / base)
			throw std::length_error("function set Y^X exceeds the cap of " + std::to_string(cap) +
			                        " elements");
		r *= base;
	}
	if (r > cap)
		throw std::length_error("function set Y^X exceeds the cap of " + std::to_string(cap) +
		                        " elements");
	return r;
}

void check_total(const FiniteCapSpace& x, const FiniteCapSpace& y, const std::vector<PointId>& f)
{
	if (f.size() != x.size())
		throw std::invalid_argument("map is not total on '" + x.name() + "'");
	for (PointId v : f)
		if (v >= y.size())
			throw std::invalid_argument("map leaves '" + y.name() + "'");
}

} // namespace

FunctionSpace::FunctionSpace(FiniteCapSpace source, FiniteCapSpace target, std::size_t cap)
	: source_(std::move(source)), target_(std::move(target))
{
	carrier_ = Carrier::indexed("h", checked_power(target_.size(), source_.size(), cap));
}

FunctionSpace::FunctionSpace(FiniteCapSpace source, FiniteCapSpace target,
                             std::vector<std::vector<PointId>> elements, std::vector<std::string> names)
	: source_(std::move(source)), target_(std::move(target)), explicit_(std::move(elements))
{
	if (explicit_.empty())
		throw std::invalid_argument("designated function set is empty");
	if (names.size() != explicit_.size())
		throw std::invalid_argument("function names do not match the function list");
	for (const auto& h : explicit_)
		check_total(source_, target_, h);
	carrier_ = Carrier::make(std::move(names));
}

PointId FunctionSpace::apply(std::size_t h, PointId x) const
{
	if (!explicit_.empty())
		return explicit_[h][x];
	std::size_t v = h;
	for (PointId i = 0; i < x; ++i)
		v /= target_.size();
	return v % target_.size();
}

std::vector<PointId> FunctionSpace::values(std::size_t h) const
{
	if (!explicit_.empty())
		return explicit_[h];
	std::vector<PointId> out(source_.size());
	std::size_t v = h;
	for (auto& o : out) {
		o = v % target_.size();
		v /= target_.size();
	}
	return out;
}

std::optional<std::size_t> FunctionSpace::index_of(const std::vector<PointId>& values) const
{
	if (values.size() != source_.size())
		return std::nullopt;
	if (!explicit_.empty()) {
		for (std::size_t i = 0; i < explicit_.size(); ++i)
			if (explicit_[i] == values)
				return i;
		return std::nullopt;
	}
	std::size_t idx = 0;
	for (std::size_t i = values.size(); i-- > 0;) {
		if (values[i] >= target_.size())
			return std::nullopt;
		idx = idx * target_.size() + values[i];
	}
	return idx;
}

std::string FunctionSpace::describe(std::size_t h) const
{
	std::string s = carrier_->name(h) + ":";
	auto v = values(h);
	for (PointId x = 0; x < v.size(); ++x)
		s += " " + source_.point_name(x) + "->" + target_.point_name(v[x]);
	return s;
}

FunctionApply FunctionSpace::applier() const
{
	return [this](std::size_t h, PointId x) { return apply(h, x); };
}

Weight hom_limit(const FunctionSpace& fs, const PrincipalFilter& filter, const std::vector<PointId>& f)
{
	if (!same_carrier(filter.carrier(), fs.carrier()))
		throw std::invalid_argument("hom_limit: filter is not on the function set");
	const auto& x = fs.source();
	const auto& y = fs.target();
	check_total(x, y, f);

	// reached[b] = {h(b) : h ∈ core F}
	std::vector<PointSet> reached(x.size());
	const auto& core = filter.core();
	for (auto h = core.find_first(); h != PrincipalFilter::Core::npos; h = core.find_next(h))
		for (PointId b = 0; b < x.size(); ++b)
			reached[b].insert(fs.apply(h, b));

	Weight out;
	for (PointId px = 0; px < x.size(); ++px)
		for (PointId b = 0; b < x.size(); ++b)
			out = max(out, residuate(y.limit(reached[b], f[px]), x.d(px, b), Tensor::Max));
	return out;
}

Weight hom_min(const FiniteCapSpace& x, const FiniteCapSpace& y, const std::vector<PointId>& f)
{
	check_total(x, y, f);
	Weight out;
	for (PointId b = 0; b < x.size(); ++b) {
		std::optional<Weight> best;
		for (PointId v = 0; v < y.size(); ++v) {
			Weight cost;
			for (PointId px = 0; px < x.size(); ++px)
				cost = max(cost, residuate(y.d(f[px], v), x.d(px, b), Tensor::Max));
			if (!best || cost < *best)
				best = cost;
		}
		out = max(out, *best);
	}
	return out;
}

Weight contraction_default(const SpaceMap& f, Tensor t)
{
	const auto& x = f.source;
	const auto& y = f.target;
	Weight out;
	if (t == Tensor::Max) {
		for (PointId px = 0; px < x.size(); ++px)
			for (PointId b = 0; b < x.size(); ++b)
				out = max(out, residuate(y.d(f(px), f(b)), x.d(px, b), t));
		return out;
	}
	constexpr std::size_t kMaxSubsetPoints = 20;
	if (x.size() > kMaxSubsetPoints)
		throw std::length_error("m_plus enumerates all subsets; source '" + x.name() + "' has more than " +
		                        std::to_string(kMaxSubsetPoints) + " points");
	for_each_nonempty_subset(x.points(), [&](PointSet b) {
		PointSet fb = f.image(b);
		for (PointId px = 0; px < x.size(); ++px)
			out = max(out, residuate(y.limit(fb, f(px)), x.limit(b, px), t));
	});
	return out;
}

bool is_contraction(const SpaceMap& f)
{
	return contraction_default(f, Tensor::Max).is_zero();
}

ContinuousLimitsReport verify_thm_continuouslimits(const SpaceMap& f, Tensor t)
{
	if (is_regular(f.target, t))
		throw std::invalid_argument("target '" + f.target.name() + "' is not " +
		                            std::string(to_string(t)) + "-regular");
	ContinuousLimitsReport r;
	r.default_of_contraction = contraction_default(f, t);
	r.hom_infimum = hom_min(f.source, f.target, f.assignment);
	r.bound = combine(r.hom_infimum, r.hom_infimum, t);
	r.holds = r.default_of_contraction <= r.bound;
	return r;
}

LemmaRegReport verify_lemma_reg(const FunctionSpace& fs, const PrincipalFilter& filter,
                                const std::vector<PointId>& f, const Weight& alpha)
{
	const auto& x = fs.source();
	const auto& y = fs.target();
	check_total(x, y, f);
	auto apply = fs.applier();

	LemmaRegReport r;
	for (PointId px = 0; px < x.size(); ++px) {
		auto at = evaluate(x.to_filter(PointSet::single(px)), filter, apply, y.carrier());
		if (alpha < y.limit(at, f[px])) {
			r.vacuous = true;
			return r;
		}
	}
	for_each_nonempty_subset(x.points(), [&](PointSet g) {
		if (!r.holds)
			return;
		auto eval = y.to_set(evaluate(x.to_filter(g), filter, apply, y.carrier()));
		PointSet fg;
		for (PointId p : g)
			fg.insert(f[p]);
		if (!fg.subset_of(y.enlarge(eval, alpha))) {
			r.holds = false;
			r.failing_g = g;
		}
	});
	return r;
}

} // namespace caplab
