#pragma once

#include <string>
#include <variant>

#include "clouds/chateauneuf.hpp"
#include "clouds/cloud.hpp"
#include "clouds/cloudops.hpp"
#include "clouds/continuous.hpp"
#include "clouds/credal.hpp"
#include "clouds/errors.hpp"
#include "clouds/intervals.hpp"

namespace clouds::io {

/// Malformed document: bad JSON, missing field, wrong type.
class SchemaError : public Error {
 public:
  using Error::Error;
};

using Model = std::variant<Cloud, PossibilityDistribution, GeneralizedPBox, ProbabilityInterval,
                           MassFunction, ContinuousCloud>;

/// "cloud", "possibility", "genpbox", "probintervals", "randomset" or
/// "continuous_cloud".
std::string kind_of(const Model& model);

/// Numbers may be JSON numbers or strings holding decimals or p/q.
Model parse_model(const std::string& text);
/// Canonical JSON with every number written as an exact "p/q" string.
std::string serialize_model(const Model& model);

}  // namespace clouds::io
