#ifndef LCIVT_DSL_HPP
#define LCIVT_DSL_HPP

#include <string>
#include <string_view>
#include <utility>

#include <lcivt/pseries.hpp>

namespace lcivt
{

// Number literal such as "3/2*eps^(1/2) + 2 - eps^2 + O(eps^3)" or
// "eps[1]*eps[2]^(1/3)"; bare eps is rejected in HAHN mode and eps[k] in LC mode.
LcNumber parse_lcnumber(std::string_view text, Mode m);

// Interval "a,b" split at the top-level comma.
std::pair<LcNumber, LcNumber> parse_interval(std::string_view text, Mode m);

// Line-oriented series source. Each of poly:, ratfun:, term: pushes a series;
// sum: replaces the top two by their sum; scale:, subst: and deriv: rewrite
// the top one. Exactly one series must remain. '#' starts a comment.
//   poly: -1, 1, eps
//   ratfun: (2 - 2*eps*X - eps^2*X) / (1 - eps*X)
//   term: sign=(-1)^n scale=1 expo=n^2 offset=0
//   term: sign=(-1)^n scale=1 expo=seq(n)
//   scale: 2*eps
//   subst: h=eps^-2 k=1
PSeries parse_series(std::string_view text, Mode m);

// Source text that parses back to a series with the same coefficients.
std::string render_series(const PSeries &s);

} // namespace lcivt

#endif
