#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "mgonal/escalator.hpp"
#include "mgonal/local_rep.hpp"
#include "mgonal/reduction.hpp"
#include "mgonal/represent.hpp"

namespace mgonal::report {

using nlohmann::json;

/// Integers that fit in 64 bits become JSON numbers, larger ones strings.
json integer(i128 v);
/// Rounded to 15 significant digits.
json decimal(long double v);

json coeffs(const MgonalForm& form);
json witness(std::span<const i64> x);

json local_profile(const LocalProfile& profile);
json local_verdict(const LocalVerdict& v);
json k_window(const KWindow& w, const MgonalForm& form, i64 A, i64 B);
json tree(const EscalatorNode& root, i64 m, i64 bound);
json exceptions(const ExceptionReport& rep);
json growth_summary(const GrowthProbe& probe);

/// "form,m,N" rows; the form column joins coefficients with ';'.
void exceptions_csv(std::ostream& os, const ExceptionReport& rep);
/// "m,largest_exception,ratio" rows followed by one JSON summary line.
void growth_csv(std::ostream& os, const GrowthProbe& probe);

std::string join(std::span<const i64> v, char sep);

}  // namespace mgonal::report
