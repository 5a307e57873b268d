#pragma once

#include <variant>

#include <json.hpp>

#include "kth/hodge/engine.hpp"
#include "kth/lattice/circle.hpp"
#include "kth/ode/schwartz.hpp"

namespace kth {

using nlohmann::json;

json to_json(const Rational& r);
json to_json(const GaussRational& z);
/// [{"exp": e, "re": "p/q", "im": "p/q"}, ...] in increasing exponent.
json to_json(const QPiC& x);
QPiC qpic_from_json(const json& j);

json to_json(const CircleLatticeSet& s);
/// [[[re, im], [re, im]], [[re, im], [re, im]]]
json to_json(const Mat2c& m);
json to_json(const SchwartzSolution& s);
json to_json(const HarmonicForm& f);
/// Same, with the grid residual that certifies harmonicity.
json to_json(const HarmonicForm& f, const ResidualReport& certificate);
json to_json(const HodgeDiamond& d);

/// Accepts a rational as a JSON integer or a "p/q" string.
Rational rational_from_json(const json& j);

/// Reads {"A": M, "B": M} where every entry of M is [re, im] or a bare real.
/// When every number is an integer or a "p/q" string the exact system is returned.
std::variant<ExactPencilSystem, PencilSystem> pencil_from_json(const json& j);

}  // namespace kth
