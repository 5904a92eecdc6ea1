#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "volterra/asymptotic_solver.hpp"
#include "volterra/periodic_solver.hpp"
#include "volterra/system.hpp"
#include "volterra/verify.hpp"

namespace volterra {

// Finite values as JSON numbers, non-finite ones as "inf", "-inf" or "nan".
nlohmann::json json_number(double v);

nlohmann::json to_json(const CheckReport& r);
nlohmann::json to_json(const PeriodicSolveReport& r);
nlohmann::json to_json(const AsymptoticSolveReport& r);
nlohmann::json to_json(const PeriodicVerification& r);
nlohmann::json to_json(const DecompositionVerification& r);

// %.17g
std::string format_double(double v);

inline constexpr const char* kCsvHeader = "n,x,y,u1,v1,u2,v2,res_x,res_y,bound_v1,bound_v2";

struct CsvRow {
  long n = 0;
  std::optional<double> x, y, u1, v1, u2, v2, res_x, res_y, bound_v1, bound_v2;
};

// Header plus one line per row; absent columns are left empty.
void write_csv(std::ostream& os, const std::vector<CsvRow>& rows);

}  // namespace volterra
