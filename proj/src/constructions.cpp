#include "caplab/constructions.hpp"

#include <stdexcept>

namespace caplab {

PointSet WitnessCarrier::indices() const
{
	PointSet out;
	for (std::size_t a = 0; a < a_size; ++a)
		out.insert(index(a));
	return out;
}

bool ConstructionReport::passed() const
{
	for (const auto& [name, ok] : clauses)
		if (!ok)
			return false;
	return !clauses.empty();
}

RegularityWitness normalize_witness(RegularityWitness w)
{
	for (std::size_t i = 0; i < w.labels.size(); ++i)
		w.labels[i] = "a" + std::to_string(i);
	return w;
}

namespace {

struct Skeleton {
	WitnessCarrier layout;
	std::vector<std::string> names;
	PointSet n_core;  // core of 𝒩 = ⋃_{a ∈ core H} (S(a) × {a}) ∪ {a}
	Weight sigma;     // λ_Y(S(H))(y0)
	Weight defect;    // max_a λ_Y(S(a))(l(a))
};

Skeleton skeleton(const FiniteCapSpace& y, const RegularityWitness& w)
{
	Skeleton k;
	k.layout = WitnessCarrier{y.size(), w.size()};
	k.names.resize(k.layout.size());
	for (std::size_t a = 0; a < w.size(); ++a) {
		for (PointId c = 0; c < y.size(); ++c)
			k.names[k.layout.pair(c, a)] = "(" + y.point_name(c) + "," + w.labels[a] + ")";
		k.names[k.layout.index(a)] = w.labels[a];
	}
	k.names[k.layout.infinity_point()] = "x_inf";
	for (std::size_t a = 0; a < w.size(); ++a) {
		if (!w.h[a])
			continue;
		for (PointId c : w.selection[a])
			k.n_core.insert(k.layout.pair(c, a));
		k.n_core.insert(k.layout.index(a));
	}
	k.sigma = y.limit(w.h_selected(), w.y0);
	k.defect = w.selection_defect(y);
	return k;
}

void require_violation(const FiniteCapSpace& y, const RegularityWitness& w, Tensor t)
{
	if (w.size() == 0 || w.l.size() != w.size() || w.selection.size() != w.size() || w.h.size() != w.size())
		throw std::invalid_argument("malformed regularity witness");
	auto [lhs, rhs] = witness_sides(y, t, w);
	if (!(rhs < lhs))
		throw std::invalid_argument("witness does not violate " + std::string(to_string(t)) +
		                            "-regularity of '" + y.name() + "'");
}

void check(ConstructionReport& r, std::string clause, bool ok)
{
	r.transcript.push_back((ok ? "ok   " : "FAIL ") + clause);
	r.clauses.emplace_back(std::move(clause), ok);
}

void finish(const ConstructionReport& r)
{
	if (!r.passed()) {
		std::string all;
		for (const auto& line : r.transcript)
			all += "\n  " + line;
		throw std::logic_error(r.kind + " construction failed verification:" + all);
	}
}

} // namespace

ConstructionReport build_thm1_converse(const FiniteCapSpace& y, const RegularityWitness& witness, Tensor t)
{
	require_violation(y, witness, t);
	const RegularityWitness w = normalize_witness(witness);
	const Skeleton k = skeleton(y, w);
	const auto& lay = k.layout;
	const auto n = lay.size();

	std::vector<Weight> m(n * n, Weight::infinity());
	for (PointId p = 0; p < n; ++p)
		m[p * n + p] = Weight();
	for (std::size_t a = 0; a < w.size(); ++a)
		for (PointId c : w.selection[a])
			m[lay.index(a) * n + lay.pair(c, a)] = Weight();
	for (PointId q : k.n_core)
		m[lay.infinity_point() * n + q] = Weight();
	FiniteCapSpace x("thm1(" + y.name() + ")", k.names, std::move(m));

	std::vector<PointId> fv(n);
	for (std::size_t a = 0; a < w.size(); ++a) {
		for (PointId c = 0; c < y.size(); ++c)
			fv[lay.pair(c, a)] = c;
		fv[lay.index(a)] = w.l[a];
	}
	fv[lay.infinity_point()] = w.y0;
	SpaceMap f("f", x, y, fv);

	// F0: maps equal to p_Y on Y × A and y0 at x_inf, with h(a) ∈ S(a).
	FunctionSpace fs(x, y);
	PrincipalFilter::Core core(fs.size());
	std::vector<std::vector<PointId>> choices;
	for (std::size_t a = 0; a < w.size(); ++a)
		choices.emplace_back(w.selection[a].begin(), w.selection[a].end());
	std::vector<std::size_t> digit(w.size(), 0);
	for (;;) {
		std::vector<PointId> h = fv;
		for (std::size_t a = 0; a < w.size(); ++a)
			h[lay.index(a)] = choices[a][digit[a]];
		core.set(*fs.index_of(h));
		std::size_t i = 0;
		for (; i < digit.size(); ++i) {
			if (++digit[i] < choices[i].size())
				break;
			digit[i] = 0;
		}
		if (i == digit.size())
			break;
	}
	PrincipalFilter f0(fs.carrier(), std::move(core));

	ConstructionReport r{.kind = "thm1", .tensor = t, .witness = w, .layout = lay, .x = x, .f = f};
	r.transcript.push_back("witness: y0=" + y.point_name(w.y0) + " lhs=" + w.lhs.to_string() +
	                       " rhs=" + w.rhs.to_string());
	r.transcript.push_back("X has " + std::to_string(n) + " points");

	check(r, "(i) X is centered", validate(x).valid);
	check(r, "(i) X is {0,inf}-valued", x.is_conv_embedded());
	check(r, "(i) X is plus-diagonal", !is_diagonal(x, Tensor::Plus));
	check(r, "(i) X is max-diagonal", !is_diagonal(x, Tensor::Max));

	Weight mf = contraction_default(f, t);
	Weight hl = hom_limit(fs, f0, fv);
	Weight displayed = max(k.sigma, k.defect);
	r.transcript.push_back("m(f) = " + mf.to_string() + ", lambda[X,Y](F0)(f) = " + hl.to_string() +
	                       ", hom_min = " + hom_min(x, y, fv).to_string());
	check(r, "m(f) > lambda_Y(S(H))(y0) (+) sup_a lambda_Y(S(a))(l(a)) = " +
	             combine(k.sigma, k.defect, t).to_string(),
	      combine(k.sigma, k.defect, t) < mf);
	check(r, "(ii) m(f) = " + mf.to_string() + " > lambda[X,Y](F0)(f) = " + hl.to_string(), hl < mf);
	check(r, "(iii) lambda[X,Y](F0)(f) <= " + displayed.to_string(), hl <= displayed);

	r.functions = std::move(fs);
	r.filter = PrincipalFilter(r.functions->carrier(), f0.core());
	r.greater = mf;
	r.smaller = hl;
	finish(r);
	return r;
}

ConstructionReport build_extension_converse(const FiniteCapSpace& y, const RegularityWitness& witness,
                                            Tensor t)
{
	require_violation(y, witness, t);
	const RegularityWitness w = normalize_witness(witness);
	const Skeleton k = skeleton(y, w);
	const auto& lay = k.layout;
	const auto n = lay.size();

	std::vector<Weight> m(n * n, Weight::infinity());
	for (PointId p = 0; p < n; ++p)
		m[p * n + p] = Weight();
	for (std::size_t a = 0; a < w.size(); ++a) {
		Weight wa = y.limit(w.selection[a], w.l[a]);
		for (PointId c : w.selection[a])
			m[lay.index(a) * n + lay.pair(c, a)] = wa;
	}
	for (PointId q : k.n_core)
		m[lay.infinity_point() * n + q] = k.sigma;
	FiniteCapSpace x("ext(" + y.name() + ")", k.names, std::move(m));

	const PointSet s = lay.pairs();
	const Weight alpha = max(k.sigma, k.defect);

	ExtensionProblem p{x, s, std::vector<PointId>(n, kUnassigned), y, t, alpha};
	for (std::size_t a = 0; a < w.size(); ++a)
		for (PointId c = 0; c < y.size(); ++c)
			p.f[lay.pair(c, a)] = c;
	p.check();

	ExtensionCandidate g;
	g.domain = x.points();
	g.g = p.f;
	PointSet h_core;
	for (std::size_t a = 0; a < w.size(); ++a) {
		g.g[lay.index(a)] = w.l[a];
		if (w.h[a])
			h_core.insert(lay.index(a));
	}
	g.g[lay.infinity_point()] = w.y0;
	SpaceMap gmap = extension_map(p, g);

	ConstructionReport r{.kind = "extension", .tensor = t, .witness = w, .layout = lay, .x = x,
	                     .f = p.restricted_map()};
	r.s = s;
	r.alpha = alpha;
	r.transcript.push_back("witness: y0=" + y.point_name(w.y0) + " lhs=" + w.lhs.to_string() +
	                       " rhs=" + w.rhs.to_string());
	r.transcript.push_back("X has " + std::to_string(n) + " points, alpha = " + alpha.to_string());

	check(r, "(i) X is centered", validate(x).valid);
	check(r, "(i) X is a pre-approach space", is_pre_approach(x));
	check(r, "(i) X is " + std::string(to_string(t)) + "-diagonal", !is_diagonal(x, t));
	check(r, "(ii) S is uniformly " + std::string(to_string(t)) + "-strict", is_strict_all(x, s, t, true));
	check(r, "(iii) h(S,f,alpha) = X", extension_domain(p) == x.points());
	bool admissible = true;
	for (PointId q = 0; q < n; ++q)
		admissible = admissible && candidate_targets(p, q).contains(g.g[q]);
	check(r, "(iv) g is admissible", admissible);

	Weight at_inf = x.limit(h_core, lay.infinity_point());
	Weight smaller = combine(at_inf, k.defect, t);
	PointSet gh;
	for (PointId q : h_core)
		gh.insert(g.g[q]);
	Weight greater = y.limit(gh, w.y0);
	check(r, "(v) lambda_X(H)(x_inf) (+) sup_a lambda_Y(S(a))(l(a)) = " + smaller.to_string() +
	             " < lambda_Y(g[H])(y0) = " + greater.to_string(),
	      smaller < greater);
	check(r, "(v) g is not a contraction", !is_contraction(gmap));

	r.g = gmap;
	r.filter = x.to_filter(h_core);
	r.greater = greater;
	r.smaller = smaller;
	finish(r);
	return r;
}

std::optional<std::pair<ConstructionReport, ConstructionReport>> find_and_refute(const FiniteCapSpace& y,
                                                                                 Tensor t)
{
	auto triple = is_regular(y, t);
	if (!triple)
		return std::nullopt;
	auto w = extract_selection_witness(y, t, *triple);
	return std::make_pair(build_thm1_converse(y, w, t), build_extension_converse(y, w, t));
}

} // namespace caplab
