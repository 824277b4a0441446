#include "caplab/suites.hpp"

#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

#include "caplab/constructions.hpp"
#include "caplab/corpus.hpp"
#include "caplab/homspace.hpp"
#include "caplab/io.hpp"
#include "caplab/oracles.hpp"
#include "caplab/properties.hpp"

namespace caplab {

namespace {

std::string one_line(const FiniteCapSpace& s)
{
	std::string text = serialize_space(s);
	std::string out;
	for (char c : text)
		out += c == '\n' ? std::string("; ") : std::string(1, c);
	return out.empty() ? out : out.substr(0, out.size() - 2);
}

std::string one_line(const SpaceMap& f)
{
	std::string out = f.name + " =";
	for (PointId p = 0; p < f.source.size(); ++p)
		out += " " + f.source.point_name(p) + "->" + f.target.point_name(f(p));
	return out;
}

class Run {
public:
	explicit Run(const SuiteConfig& c) : config(c), rng(c.seed) {}

	const SuiteConfig& config;
	SplitMix64 rng;
	SuiteResult result;
	std::map<std::string, std::size_t> counters;

	std::vector<Tensor> tensors() const
	{
		if (config.tensor)
			return {*config.tensor};
		return {Tensor::Plus, Tensor::Max};
	}

	std::vector<Weight> grid() const { return config.grid.empty() ? default_entry_grid() : config.grid; }

	std::size_t trials(std::size_t fallback) const { return config.trials ? config.trials : fallback; }

	void count(const std::string& key, std::size_t by = 1) { counters[key] += by; }

	void note(std::string line) { result.transcript.push_back(std::move(line)); }

	/// Records one assertion; failures carry their witness lines.
	bool check(bool ok, const std::string& what, const std::vector<std::string>& witness = {})
	{
		++result.checks;
		if (ok)
			return true;
		++result.failures;
		result.passed = false;
		if (config.format == OutputFormat::KeyValue) {
			std::string line = "suite=" + config.suite + " result=fail check=\"" + what + "\"";
			for (std::size_t i = 0; i < witness.size(); ++i)
				line += " witness" + std::to_string(i) + "=\"" + witness[i] + "\"";
			note(line);
		} else {
			note("FAIL " + what);
			for (const auto& w : witness)
				note("  " + w);
		}
		return false;
	}

	/// Runs `body`, converting exceptions into failed checks.
	void guarded(const std::string& what, const std::vector<std::string>& witness, const std::function<void()>& body)
	{
		try {
			body();
		} catch (const std::exception& e) {
			auto w = witness;
			w.push_back(std::string("exception: ") + e.what());
			check(false, what, w);
		}
	}

	SuiteResult finish()
	{
		const bool kv = config.format == OutputFormat::KeyValue;
		for (const auto& [key, value] : counters)
			note(kv ? "suite=" + config.suite + " " + key + "=" + std::to_string(value)
			        : config.suite + ": " + key + " = " + std::to_string(value));
		if (kv)
			note("suite=" + config.suite + " result=" + (result.passed ? "pass" : "fail") +
			     " checks=" + std::to_string(result.checks) + " failures=" + std::to_string(result.failures));
		else
			note(config.suite + ": " + (result.passed ? "PASS" : "FAIL") + " (" + std::to_string(result.checks) +
			     " checks, " + std::to_string(result.failures) + " failures)");
		if (!result.passed)
			note((kv ? "suite=" + config.suite + " reproduce=\"" : "reproduce: ") + reproduction_command(config) +
			     (kv ? "\"" : ""));
		return std::move(result);
	}
};

const std::vector<Weight> kZeroOneInf = {Weight(0), Weight(1), Weight::infinity()};
const std::vector<Weight> kZeroOneTwoInf = {Weight(0), Weight(1), Weight(2), Weight::infinity()};
const std::vector<Weight> kZeroInf = {Weight(0), Weight::infinity()};

/// Exhaustive centered spaces on 1..max_points over {0,1,inf}, then
/// `random` seeded 4-point spaces over {0,1,2,inf}.
void small_corpus(Run& run, std::size_t random, const std::function<void(const FiniteCapSpace&)>& fn)
{
	for (std::size_t n = 1; n <= run.config.exhaustive; ++n)
		for_each_space(n, kZeroOneInf, [&](const FiniteCapSpace& s) {
			run.count("exhaustive spaces");
			fn(s);
		});
	for (std::size_t i = 0; i < random; ++i) {
		run.count("random 4-point spaces");
		fn(random_matrix(run.rng, 4, kZeroOneTwoInf, "R4_" + std::to_string(i)));
	}
	// Random matrices are rarely regular; metrics and ultrametrics exercise the
	// exhaustive side of the searches.
	const std::vector<Weight> steps = {Weight(1), Weight(2)};
	for (std::size_t i = 0; i < random / 10; ++i) {
		run.count("random 4-point (ultra)metrics");
		fn(random_metric(run.rng, 4, steps, "M4_" + std::to_string(i)));
		fn(random_ultrametric(run.rng, 4, steps, "U4_" + std::to_string(i)));
	}
}

/// Crafted + standard random corpus + exhaustive 3-point spaces over {0,1,inf}.
void converse_corpus(Run& run, const std::function<void(const std::string&, const FiniteCapSpace&)>& fn)
{
	for (const auto& entry : standard_corpus(run.config.seed, run.trials(25)))
		fn(entry.tag, entry.space);
	for_each_space(3, kZeroOneInf, [&](const FiniteCapSpace& s) { fn("exhaustive-3", s); });
}

void suite_equivalence(Run& run)
{
	small_corpus(run, run.trials(500), [&](const FiniteCapSpace& y) {
		for (Tensor t : run.tensors()) {
			const std::string tag = std::string(to_string(t)) + " " + one_line(y);
			auto triple = is_regular(y, t);
			auto found = check_selection_regularity(y, t, y.size());
			run.check(triple.has_value() == found.has_value(), "is_regular agrees with selection search",
			          {tag, std::string("fast path: ") + (triple ? "violation" : "regular"),
			           std::string("selection search: ") + (found ? "violation" : "no violation")});
			if (found) {
				auto [lhs, rhs] = witness_sides(y, t, *found);
				run.check(rhs < lhs && lhs == found->lhs && rhs == found->rhs, "selection witness re-evaluates",
				          {tag});
			}
			if (triple) {
				run.count(std::string(to_string(t)) + " non-regular");
				run.guarded("extract_selection_witness", {tag}, [&] {
					auto w = extract_selection_witness(y, t, *triple);
					run.check(w.rhs < w.lhs, "extracted witness is a violation", {tag});
				});
			} else {
				run.count(std::string(to_string(t)) + " regular");
			}
		}
	});
}

void suite_oracle(Run& run)
{
	small_corpus(run, run.trials(500), [&](const FiniteCapSpace& y) {
		for (Tensor t : run.tensors()) {
			const std::string tag = std::string(to_string(t)) + " " + one_line(y);
			run.check(!is_regular(y, t) == regular_by_definition(y, t), "regularity fast path matches definition",
			          {tag});
			run.check(!is_diagonal(y, t) == diagonal_by_selection(y, t, 2),
			          "diagonality fast path matches selection oracle", {tag});
		}
	});
}

void suite_thm1(Run& run)
{
	const auto tensors = run.tensors();
	const auto grid = run.grid();
	for (std::size_t i = 0; i < run.trials(200); ++i) {
		const Tensor t = tensors[i % tensors.size()];
		const std::string id = std::to_string(i);
		FiniteCapSpace y = t == Tensor::Plus ? random_metric(run.rng, 3, grid, "Y" + id)
		                                     : random_ultrametric(run.rng, 3, grid, "Y" + id);
		FiniteCapSpace x = random_matrix(run.rng, 3, grid, "X" + id);
		SpaceMap f = random_map(run.rng, x, y);
		const std::vector<std::string> w = {std::string("tensor ") + std::string(to_string(t)), one_line(x),
		                                    one_line(y), one_line(f)};
		run.guarded("continuous-limits bound", w, [&] {
			auto r = verify_thm_continuouslimits(f, t);
			auto ww = w;
			ww.push_back("m = " + r.default_of_contraction.to_string() + ", c = " + r.hom_infimum.to_string());
			run.check(r.holds, "m(f) <= c (+) c", ww);
			run.check(r.hom_infimum == hom_min_by_functions(x, y, f.assignment), "hom_min matches enumeration", ww);
			if (t == Tensor::Plus)
				run.check(r.default_of_contraction <= r.hom_infimum + r.hom_infimum, "m_+(f) <= 2 c", ww);
			else
				run.check(r.default_of_contraction <= r.hom_infimum, "m_max(f) <= c", ww);
			run.count(r.default_of_contraction.is_zero() ? "contractions" : "non-contractions");
		});
	}
}

void pin(Run& run, const ConstructionReport& r, const Weight& greater, const Weight& smaller)
{
	run.check(r.greater == greater && r.smaller == smaller,
	          "Y3/plus " + r.kind + " gap is exactly " + greater.to_string() + " vs " + smaller.to_string(),
	          {"got " + r.greater.to_string() + " vs " + r.smaller.to_string()});
	run.note(r.kind + " Y3/plus: " + r.greater.to_string() + " vs " + r.smaller.to_string());
}

void suite_converse(Run& run, bool thm1)
{
	{
		auto y3 = space_y3();
		auto triple = is_regular(y3, Tensor::Plus);
		run.guarded("Y3 construction", {one_line(y3)}, [&] {
			auto w = extract_selection_witness(y3, Tensor::Plus, *triple);
			if (thm1)
				pin(run, build_thm1_converse(y3, w, Tensor::Plus), Weight(5), Weight(1));
			else
				pin(run, build_extension_converse(y3, w, Tensor::Plus), Weight(5), Weight(2));
		});
	}
	converse_corpus(run, [&](const std::string& tag, const FiniteCapSpace& y) {
		for (Tensor t : run.tensors()) {
			auto triple = is_regular(y, t);
			if (!triple)
				continue;
			run.count(tag + " non-regular (" + std::string(to_string(t)) + ")");
			const std::vector<std::string> w = {std::string("tensor ") + std::string(to_string(t)), one_line(y)};
			run.guarded("construction", w, [&] {
				auto witness = extract_selection_witness(y, t, *triple);
				auto r = thm1 ? build_thm1_converse(y, witness, t) : build_extension_converse(y, witness, t);
				run.check(r.passed() && r.smaller < r.greater, "all clauses hold with a strict gap", w);
				run.check(r.x.size() == y.size() * witness.size() + witness.size() + 1, "carrier size law", w);
			});
		}
	});
}

void suite_lemma(Run& run)
{
	const auto grid = run.grid();
	for (std::size_t i = 0; i < run.trials(500); ++i) {
		const std::string id = std::to_string(i);
		FiniteCapSpace x = random_matrix(run.rng, 3, grid, "X" + id);
		FiniteCapSpace y = random_matrix(run.rng, 3, grid, "Y" + id);
		FunctionSpace fs(x, y);
		PrincipalFilter::Core core(fs.size());
		const std::size_t k = 1 + run.rng.below(4);
		for (std::size_t j = 0; j < k; ++j)
			core.set(run.rng.below(fs.size()));
		PrincipalFilter filter(fs.carrier(), core);
		SpaceMap f = random_map(run.rng, x, y);

		// Half the trials use the least α meeting the precondition, so most are not vacuous.
		Weight alpha;
		if (run.rng.chance(1, 2)) {
			for (PointId p = 0; p < x.size(); ++p) {
				PointSet at;
				for (auto h : filter.points())
					at.insert(fs.apply(h, p));
				alpha = max(alpha, y.limit(at, f(p)));
			}
		} else {
			alpha = run.rng.pick(y.grid());
		}
		const std::vector<std::string> w = {one_line(x), one_line(y), "F = " + serialize_functions(fs, filter),
		                                    one_line(f), "alpha = " + alpha.to_string()};
		auto r = verify_lemma_reg(fs, filter, f.assignment, alpha);
		run.count(r.vacuous ? "vacuous" : "non-vacuous");
		if (!r.vacuous)
			run.check(r.holds, "f(G) is contained in <G,F>^(alpha)", w);
	}
}

void suite_diag_strict(Run& run)
{
	for (const auto& entry : standard_corpus(run.config.seed, run.trials(25))) {
		const auto& x = entry.space;
		for (Tensor t : run.tensors()) {
			if (is_diagonal(x, t))
				continue;
			run.count(std::string(to_string(t)) + "-diagonal spaces");
			for_each_nonempty_subset(x.points(), [&](PointSet s) {
				for (const Weight& alpha : x.grid()) {
					if (alpha.is_infinite())
						continue;
					auto failure = is_strict(x, s, alpha, t, true);
					run.check(!failure, "uniformly strict",
					          {std::string("tensor ") + std::string(to_string(t)), one_line(x),
					           "S = " + x.format_set(s), "alpha = " + alpha.to_string(),
					           failure ? "B = " + x.format_set(failure->b) : ""});
				}
			});
		}
	}
}

/// A contraction S -> Y: random attempts, falling back to a constant map.
std::vector<PointId> random_contraction(Run& run, const FiniteCapSpace& x, PointSet s, const FiniteCapSpace& y)
{
	const FiniteCapSpace sub = x.subspace(s);
	for (int attempt = 0; attempt < 8; ++attempt) {
		SpaceMap f = random_map(run.rng, sub, y);
		if (is_contraction(f))
			return f.assignment;
	}
	return std::vector<PointId>(sub.size(), run.rng.below(y.size()));
}

void suite_extension(Run& run)
{
	const auto tensors = run.tensors();
	const auto grid = run.grid();
	const std::size_t wanted = run.trials(100);
	std::size_t confirmed = 0;
	for (std::size_t i = 0; confirmed < wanted; ++i) {
		if (i > 50 * wanted) {
			run.check(false, "enough strict problems generated",
			          {std::to_string(confirmed) + " of " + std::to_string(wanted)});
			return;
		}
		const Tensor t = tensors[i % tensors.size()];
		const std::string id = std::to_string(i);
		const std::size_t n = 3 + run.rng.below(2);
		FiniteCapSpace x = [&] {
			switch (run.rng.below(3)) {
			case 0: return random_matrix(run.rng, n, grid, "X" + id);
			case 1: return random_metric(run.rng, n, grid, "X" + id);
			default: return random_ultrametric(run.rng, n, grid, "X" + id);
			}
		}();
		FiniteCapSpace y = [&] {
			switch (run.rng.below(3)) {
			case 0: return random_matrix(run.rng, 3, grid, "Y" + id);
			default: return t == Tensor::Plus ? random_metric(run.rng, 3, grid, "Y" + id)
			                                  : random_ultrametric(run.rng, 3, grid, "Y" + id);
			}
		}();
		PointSet s;
		while (s.empty() || s == x.points())
			s = PointSet(run.rng.below(std::uint64_t{1} << n));
		const Weight alpha = i % 4 == 0 ? Weight() : run.rng.pick(x.grid());
		if (alpha.is_infinite())
			continue;

		std::vector<PointId> fs = random_contraction(run, x, s, y);
		ExtensionProblem p{x, s, std::vector<PointId>(x.size(), kUnassigned), y, t, alpha};
		std::size_t k = 0;
		for (PointId q : s)
			p.f[q] = fs[k++];

		if (is_strict(x, s, alpha, t, false)) {
			run.count("skipped: S not strict");
			continue;
		}
		++confirmed;
		const std::vector<std::string> w = {std::string("tensor ") + std::string(to_string(t)), one_line(x),
		                                    "S = " + x.format_set(s), one_line(p.restricted_map()),
		                                    "alpha = " + alpha.to_string()};
		run.guarded("extension bound", w, [&] {
			p.check();
			auto r = verify_extension_theorem(p);
			run.check(r.precondition, "precondition confirmed", w);
			run.check(r.holds, "m(g) <= alpha (+) alpha for every regular extension", w);
			run.count("regular extensions checked", r.extensions.size());
			const bool y_regular = !is_regular(y, t);
			if (alpha.is_zero() && y_regular) {
				run.count("alpha=0, regular Y");
				for (const auto& g : r.extensions)
					run.check(is_contraction(extension_map(p, g)), "admissible extension is a contraction", w);
				run.check(!r.extensions.empty(), "a contractive extension exists on h(S,f)", w);
			}
		});
	}
	run.count("strict problems", confirmed);
}

void suite_conv(Run& run)
{
	std::vector<FiniteCapSpace> xs;
	for (std::size_t n = 1; n <= 3; ++n)
		for_each_space(n, kZeroInf, [&](const FiniteCapSpace& s) { xs.push_back(s); });

	for_each_space(3, kZeroInf, [&](const FiniteCapSpace& y) {
		run.count("Y spaces");
		const bool regular = !is_regular(y, Tensor::Plus);
		run.check(regular == !is_regular(y, Tensor::Max), "plus and max regularity agree on {0,inf}", {one_line(y)});

		// Does some X of the corpus carry a map with hom_min = 0 that is not a contraction?
		std::optional<std::string> corpus_witness;
		for (const auto& x : xs) {
			FunctionSpace fs(x, y);
			for (std::size_t h = 0; h < fs.size() && !corpus_witness; ++h) {
				SpaceMap f("f", x, y, fs.values(h));
				if (hom_min(x, y, f.assignment).is_zero() && !is_contraction(f))
					corpus_witness = one_line(x) + " / " + one_line(f);
			}
			if (corpus_witness)
				break;
		}
		if (regular) {
			run.count("regular Y");
			run.check(!corpus_witness, "regular Y: hom_min = 0 implies contraction",
			          {one_line(y), corpus_witness.value_or("")});
			return;
		}
		run.count("non-regular Y");
		if (corpus_witness)
			run.count("non-regular Y refuted within the 3-point corpus");
		run.guarded("non-regular Y: construction witnesses the failure", {one_line(y)}, [&] {
			auto r = build_thm1_converse(y, extract_selection_witness(y, Tensor::Plus, *is_regular(y, Tensor::Plus)),
			                             Tensor::Plus);
			const bool topological = r.x.is_conv_embedded() && !is_diagonal(r.x, Tensor::Plus);
			run.check(topological && r.smaller.is_zero() && hom_min(r.x, y, r.f.assignment).is_zero() &&
			              !is_contraction(r.f),
			          "non-regular Y: built f has hom_min = 0 and is not a contraction", {one_line(y)});
		});
	});
}

void suite_order(Run& run)
{
	// m_+ <= m_max on random maps between corpus spaces.
	auto corpus = standard_corpus(run.config.seed, 25);
	for (std::size_t i = 0; i < run.trials(200); ++i) {
		const auto& x = corpus[run.rng.below(corpus.size())].space;
		const auto& y = corpus[run.rng.below(corpus.size())].space;
		SpaceMap f = random_map(run.rng, x, y);
		Weight plus = contraction_default(f, Tensor::Plus);
		Weight mx = contraction_default(f, Tensor::Max);
		run.check(plus <= mx, "m_+(f) <= m_max(f)", {one_line(x), one_line(y), one_line(f)});
		run.count("corpus maps");
	}

	// Meet axiom and antitonicity of λ_[X,Y] on all |X| <= 2, |Y| <= 3 over {0,1,inf}.
	// The meet axiom for arbitrary F, G follows from F ∧ {h}↑ for every F and h
	// (write G as the meet of its point filters), and antitonicity from the
	// covering pairs F ∧ {h}↑ <= F; both are checked on every filter F.
	std::vector<FiniteCapSpace> xs, ys;
	for (std::size_t n = 1; n <= 2; ++n)
		for_each_space(n, kZeroOneInf, [&](const FiniteCapSpace& s) { xs.push_back(s); });
	for (std::size_t n = 1; n <= 3; ++n)
		for_each_space(n, kZeroOneInf, [&](const FiniteCapSpace& s) { ys.push_back(s); });
	for (const auto& x : xs)
		for (const auto& y : ys) {
			FunctionSpace fs(x, y);
			const std::size_t m = fs.size();
			for (std::size_t fi = 0; fi < m; ++fi) {
				const auto f = fs.values(fi);
				std::vector<Weight> value(std::size_t{1} << m);
				for (std::uint64_t core = 1; core < value.size(); ++core) {
					PrincipalFilter::Core bits(m);
					for (std::size_t h = 0; h < m; ++h)
						if ((core >> h) & 1U)
							bits.set(h);
					value[core] = hom_limit(fs, PrincipalFilter(fs.carrier(), bits), f);
				}
				for (std::uint64_t core = 1; core < value.size(); ++core)
					for (std::size_t h = 0; h < m; ++h) {
						const std::uint64_t met = core | (std::uint64_t{1} << h);
						const Weight& single = value[std::uint64_t{1} << h];
						if (!(value[met] == max(value[core], single) && value[core] <= value[met])) {
							run.check(false, "hom meet axiom / antitonicity",
							          {one_line(x), one_line(y), "f = " + fs.describe(fi), "core bits " +
							           std::to_string(core) + " + h" + std::to_string(h)});
							return;
						}
					}
				run.check(true, "hom meet axiom / antitonicity");
				run.count("hom instances (X, Y, f)");
			}
		}
}

} // namespace

const std::vector<std::string>& suite_names()
{
	static const std::vector<std::string> names = {"equivalence", "oracle",      "thm1", "thm1-converse",
	                                               "lemma",       "diag-strict", "extension",
	                                               "extension-converse",         "conv", "order"};
	return names;
}

SuiteResult run_suite(const SuiteConfig& config)
{
	Run run(config);
	const auto& s = config.suite;
	if (s == "equivalence")
		suite_equivalence(run);
	else if (s == "oracle")
		suite_oracle(run);
	else if (s == "thm1")
		suite_thm1(run);
	else if (s == "thm1-converse")
		suite_converse(run, true);
	else if (s == "lemma")
		suite_lemma(run);
	else if (s == "diag-strict")
		suite_diag_strict(run);
	else if (s == "extension")
		suite_extension(run);
	else if (s == "extension-converse")
		suite_converse(run, false);
	else if (s == "conv")
		suite_conv(run);
	else if (s == "order")
		suite_order(run);
	else
		throw std::invalid_argument("unknown suite '" + s + "'");
	return run.finish();
}

std::string reproduction_command(const SuiteConfig& config)
{
	std::ostringstream out;
	out << "caplab verify " << config.suite << " --seed " << config.seed;
	if (config.trials)
		out << " --trials " << config.trials;
	if (config.exhaustive != 3)
		out << " --exhaustive " << config.exhaustive;
	if (config.tensor)
		out << " --oplus " << to_string(*config.tensor);
	if (!config.grid.empty()) {
		out << " --grid ";
		for (std::size_t i = 0; i < config.grid.size(); ++i)
			out << (i ? "," : "") << config.grid[i];
	}
	if (config.format == OutputFormat::KeyValue)
		out << " --format kv";
	return out.str();
}

} // namespace caplab
