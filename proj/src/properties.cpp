#include "caplab/properties.hpp"

#include <stdexcept>

namespace caplab {

PointSet RegularityWitness::h_image() const
{
	PointSet out;
	for (std::size_t i = 0; i < size(); ++i)
		if (h[i])
			out.insert(l[i]);
	return out;
}

PointSet RegularityWitness::h_selected() const
{
	PointSet out;
	for (std::size_t i = 0; i < size(); ++i)
		if (h[i])
			out = out | selection[i];
	return out;
}

Weight RegularityWitness::selection_defect(const FiniteCapSpace& y) const
{
	Weight w;
	for (std::size_t i = 0; i < size(); ++i)
		w = max(w, y.limit(selection[i], l[i]));
	return w;
}

std::pair<Weight, Weight> witness_sides(const FiniteCapSpace& y, Tensor t, const RegularityWitness& w)
{
	Weight lhs = y.limit(w.h_image(), w.y0);
	Weight rhs = combine(y.limit(w.h_selected(), w.y0), w.selection_defect(y), t);
	return {lhs, rhs};
}

std::optional<RegularityTriple> is_regular(const FiniteCapSpace& y, Tensor t)
{
	std::optional<RegularityTriple> best;
	const auto n = y.size();
	for (PointId a = 0; a < n; ++a)
		for (PointId b = 0; b < n; ++b)
			for (PointId p = 0; p < n; ++p) {
				const Weight& lhs = y.d(p, b);
				if (best && !(lhs < best->lhs))
					continue;
				Weight rhs = combine(y.d(p, a), y.d(b, a), t);
				if (rhs < lhs)
					best = RegularityTriple{a, b, p, lhs, rhs};
			}
	return best;
}

PointSet regularity_points(const FiniteCapSpace& y, Tensor t)
{
	PointSet out;
	const auto n = y.size();
	for (PointId p = 0; p < n; ++p) {
		bool ok = true;
		for (PointId a = 0; a < n && ok; ++a)
			for (PointId b = 0; b < n && ok; ++b)
				ok = y.d(p, b) <= combine(y.d(p, a), y.d(b, a), t);
		if (ok)
			out.insert(p);
	}
	return out;
}

namespace {

struct Candidate {
	PointId l;
	PointSet s;
	std::vector<Weight> image_limit;     // d(y0, l) per y0
	std::vector<Weight> selected_limit;  // λ(S)(y0) per y0
	Weight defect;                       // λ(S)(l)
};

class SelectionSearch {
public:
	SelectionSearch(const FiniteCapSpace& y, Tensor t) : y_(y), t_(t)
	{
		const auto n = y.size();
		for (PointId l = 0; l < n; ++l)
			for_each_nonempty_subset(y.points(), [&](PointSet s) {
				Candidate c{l, s, {}, {}, y.limit(s, l)};
				for (PointId y0 = 0; y0 < n; ++y0) {
					c.image_limit.push_back(y.d(y0, l));
					c.selected_limit.push_back(y.limit(s, y0));
				}
				pool_.push_back(std::move(c));
			});
	}

	std::optional<RegularityWitness> run(std::size_t k)
	{
		const auto n = y_.size();
		for (std::size_t m = 1; m <= k && m <= pool_.size(); ++m) {
			chosen_.clear();
			std::vector<Weight> lhs(n), sel(n);
			if (dfs(m, 0, lhs, sel, Weight()))
				return found_;
		}
		return std::nullopt;
	}

private:
	bool dfs(std::size_t remaining, std::size_t from, const std::vector<Weight>& lhs,
	         const std::vector<Weight>& sel, const Weight& defect)
	{
		const auto n = y_.size();
		if (remaining == 0) {
			for (PointId y0 = 0; y0 < n; ++y0) {
				Weight rhs = combine(sel[y0], defect, t_);
				if (rhs < lhs[y0]) {
					record(y0, lhs[y0], rhs);
					return true;
				}
			}
			return false;
		}
		std::vector<Weight> next_lhs(n), next_sel(n);
		for (std::size_t i = from; i + remaining <= pool_.size(); ++i) {
			const Candidate& c = pool_[i];
			for (PointId y0 = 0; y0 < n; ++y0) {
				next_lhs[y0] = max(lhs[y0], c.image_limit[y0]);
				next_sel[y0] = max(sel[y0], c.selected_limit[y0]);
			}
			chosen_.push_back(i);
			if (dfs(remaining - 1, i + 1, next_lhs, next_sel, max(defect, c.defect)))
				return true;
			chosen_.pop_back();
		}
		return false;
	}

	void record(PointId y0, const Weight& lhs, const Weight& rhs)
	{
		RegularityWitness w;
		for (std::size_t j = 0; j < chosen_.size(); ++j) {
			w.labels.push_back("a" + std::to_string(j));
			w.l.push_back(pool_[chosen_[j]].l);
			w.selection.push_back(pool_[chosen_[j]].s);
			w.h.push_back(true);
		}
		w.y0 = y0;
		w.lhs = lhs;
		w.rhs = rhs;
		found_ = std::move(w);
	}

	const FiniteCapSpace& y_;
	Tensor t_;
	std::vector<Candidate> pool_;
	std::vector<std::size_t> chosen_;
	RegularityWitness found_;
};

} // namespace

std::optional<RegularityWitness> check_selection_regularity(const FiniteCapSpace& y, Tensor t,
                                                            std::size_t k)
{
	if (k == 0)
		throw std::invalid_argument("selection search bound must be at least 1");
	SelectionSearch search(y, t);
	return search.run(k);
}

RegularityWitness extract_selection_witness(const FiniteCapSpace& y, Tensor t,
                                            const RegularityTriple& triple)
{
	RegularityWitness w;
	w.labels = {y.point_name(triple.b)};
	w.l = {triple.b};
	w.selection = {PointSet::single(triple.a)};
	w.h = {true};
	w.y0 = triple.y;
	auto [lhs, rhs] = witness_sides(y, t, w);
	if (!(rhs < lhs))
		throw std::logic_error("triple (" + y.point_name(triple.a) + "," + y.point_name(triple.b) + "," +
		                       y.point_name(triple.y) + ") does not violate " +
		                       std::string(to_string(t)) + "-regularity");
	w.lhs = lhs;
	w.rhs = rhs;
	return w;
}

std::optional<DiagonalityTriple> is_diagonal(const FiniteCapSpace& y, Tensor t)
{
	std::optional<DiagonalityTriple> best;
	const auto n = y.size();
	for (PointId x = 0; x < n; ++x)
		for (PointId p = 0; p < n; ++p)
			for (PointId c = 0; c < n; ++c) {
				const Weight& lhs = y.d(p, c);
				if (best && !(lhs < best->lhs))
					continue;
				Weight rhs = combine(y.d(p, x), y.d(x, c), t);
				if (rhs < lhs)
					best = DiagonalityTriple{x, p, c, lhs, rhs};
			}
	return best;
}

Classification classify(const FiniteCapSpace& y)
{
	Classification c;
	c.pre_approach = is_pre_approach(y);
	c.approach = c.pre_approach && !is_diagonal(y, Tensor::Plus);
	c.non_archimedean_approach = c.pre_approach && !is_diagonal(y, Tensor::Max);
	c.regular = !is_regular(y, Tensor::Plus);
	c.strongly_regular = !is_regular(y, Tensor::Max);
	c.convergence_embedded = y.is_conv_embedded();
	c.topological = c.convergence_embedded && c.approach && c.pre_approach;
	return c;
}

std::optional<StrictnessWitness> is_strict(const FiniteCapSpace& x, PointSet s, const Weight& alpha,
                                           Tensor t, bool uniform)
{
	if (s.empty())
		throw std::invalid_argument("strictness of an empty subspace");
	const PointSet enlarged = x.enlarge(s, alpha);

	struct Option {
		PointSet reach;
		std::vector<Weight> limit;
	};
	std::vector<Option> options;
	for_each_nonempty_subset(s, [&](PointSet c) {
		Option o{x.enlarge(c, alpha), {}};
		for (PointId p = 0; p < x.size(); ++p)
			o.limit.push_back(x.limit(c, p));
		options.push_back(std::move(o));
	});

	std::optional<StrictnessWitness> failure;
	for_each_nonempty_subset(enlarged, [&](PointSet b) {
		if (failure)
			return;
		auto fits = [&](const Option& o, PointId p) {
			return o.limit[p] <= combine(x.limit(b, p), alpha, t);
		};
		if (uniform) {
			for (const Option& o : options) {
				if (!b.subset_of(o.reach))
					continue;
				bool all = true;
				for (PointId p : enlarged)
					if (!fits(o, p)) {
						all = false;
						break;
					}
				if (all)
					return;
			}
			failure = StrictnessWitness{std::nullopt, b};
			return;
		}
		for (PointId p : enlarged) {
			bool found = false;
			for (const Option& o : options)
				if (b.subset_of(o.reach) && fits(o, p)) {
					found = true;
					break;
				}
			if (!found) {
				failure = StrictnessWitness{p, b};
				return;
			}
		}
	});
	return failure;
}

bool is_strict_all(const FiniteCapSpace& x, PointSet s, Tensor t, bool uniform)
{
	for (const Weight& alpha : x.grid())
		if (alpha.is_finite() && is_strict(x, s, alpha, t, uniform))
			return false;
	return true;
}

} // namespace caplab
