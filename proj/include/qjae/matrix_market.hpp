#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <string>

namespace qjae {

// Dense Matrix Market reader. Accepts the "array" and "coordinate" formats
// with real or integer fields and general or symmetric storage. Complex,
// pattern and skew-symmetric files are rejected, as are non-finite values.
Eigen::MatrixXd read_matrix_market(const std::string& path);
Eigen::MatrixXd read_matrix_market(std::istream& in, const std::string& name);

// Writes "%%MatrixMarket matrix array real general" with 17 significant
// digits per entry (lossless double round-trip).
void write_matrix_market(const Eigen::MatrixXd& a, std::ostream& out);

}  // namespace qjae
