#pragma once

#include <string>
#include <vector>

#include "qmodular/identities.hpp"
#include "qmodular/levels.hpp"

namespace qmodular {

// JSON documents emitted by the CLI.  Integers that can grow without bound
// (coefficients, numerators, denominators) are written as decimal strings.

std::string basis_json(const BasisSet& basis);
std::string series_json(const QSeries& f);
std::string coordinates_json(int N, long weight, const std::vector<Rational>& coords);
std::string identities_json(const std::vector<IdentityReport>& reports);
std::string levels_json(const Registry& registry);
std::string dims_json(int N, const std::vector<std::pair<long, long>>& rows);

}  // namespace qmodular
