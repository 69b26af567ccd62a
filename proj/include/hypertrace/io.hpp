#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "hypertrace/kernel_bounds.hpp"
#include "hypertrace/lattice_orbits.hpp"

namespace hypertrace {

/// {"d": 3, "generators": [{"label": "S", "matrix": [[...], ...]}, ...],
///  "includes_inverses": false}
GeneratorSet parse_generators(const std::string& json_text, double tol = kGroupTol);
GeneratorSet load_generators(const std::string& path, double tol = kGroupTol);

/// Shortest round-trip decimal form, with nan/inf spelled out.
std::string format_double(double x);

/// Lines "# name=value" written ahead of a CSV body.
void write_csv_header_comments(std::ostream& os,
                               const std::vector<std::pair<std::string, std::string>>& meta);

/// word,len,M,N,Q,delta,coset_id
void write_orbit_csv(std::ostream& os, const OrbitTable& table);

/// word,word_length,M,N_u,Q_u,delta_u,dist
void write_delta_csv(std::ostream& os, const OrbitTable& table);

/// x,count
void write_counting_csv(std::ostream& os, const CountingResult& res);

/// mu,value_log,sign,envelope_log
void write_limit_csv(std::ostream& os, const std::vector<LimitRow>& rows);

}  // namespace hypertrace
