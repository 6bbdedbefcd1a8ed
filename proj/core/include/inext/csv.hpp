#pragma once

#include <Eigen/Dense>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

namespace inext {

// Shortest round-trip decimal form, '.' separator, locale-independent.
std::string format_number(double v);

// RFC-4180 quoting: fields containing commas, quotes or newlines are quoted,
// embedded quotes doubled. Lines end with LF.
std::string csv_escape(const std::string& field);

class CsvWriter {
  public:
    explicit CsvWriter(const std::string& path);

    void text_row(const std::vector<std::string>& fields);
    void row(const std::vector<double>& values);

  private:
    std::ofstream out_;
};

// Tensor-grid snapshot: header cell "x\\y" then the y coordinates; one data
// row per x node (row-major field layout).
void write_grid_csv(const std::string& path, const Eigen::VectorXd& x,
                    const Eigen::VectorXd& y, const Eigen::ArrayXXd& f);

// 1D profile with named columns over the x nodes.
void write_profile_csv(
    const std::string& path, const Eigen::VectorXd& x,
    const std::vector<std::pair<std::string, Eigen::ArrayXd>>& columns);

}  // namespace inext
