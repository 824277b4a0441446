#pragma once

#include <optional>

#include "caplab/homspace.hpp"
#include "caplab/space.hpp"

// Definition-level brute force. Each function evaluates the defining
// inequality directly, without the closed forms used elsewhere, and is only
// meant for small instances.

namespace caplab {

/// λ(A^(ε))(y) <= λ(A)(y) ⊕ ε for every nonempty A, finite grid ε and y.
bool regular_by_definition(const FiniteCapSpace& y, Tensor t);

/// λ(𝒮(F))(y) <= λ(F)(y) ⊕ sup_a λ(𝒮(a))(a) for every nonempty F and every
/// selection 𝒮 whose cores have at most `max_core` points.
bool diagonal_by_selection(const FiniteCapSpace& y, Tensor t, std::size_t max_core = 2);

/// Least α of the candidate grid {0, entries of Y, inf} with
/// λ_Y(⟨G, F⟩)(f(x)) <= λ_X(G)(x) ∨ α for all nonempty G and x.
Weight hom_limit_by_scan(const FunctionSpace& fs, const PrincipalFilter& filter, const std::vector<PointId>& f);

/// Least α of the grid {0, inf, entries of Y, v - u for entries v of Y and u of X}
/// with λ_Y(f[B])(f(x)) <= λ_X(B)(x) ⊕ α for all nonempty B and x.
Weight contraction_default_by_scan(const SpaceMap& f, Tensor t);

/// min over h ∈ Y^X of hom_limit({h}↑).
Weight hom_min_by_functions(const FiniteCapSpace& x, const FiniteCapSpace& y, const std::vector<PointId>& f);

/// min over every filter on Y^X. Refuses (std::length_error) when |Y^X| > max_functions.
Weight hom_min_by_filters(const FiniteCapSpace& x, const FiniteCapSpace& y, const std::vector<PointId>& f,
                          std::size_t max_functions = 16);

} // namespace caplab
