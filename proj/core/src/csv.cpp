#include "inext/csv.hpp"

#include <charconv>

#include "inext/errors.hpp"

namespace inext {

std::string format_number(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        out += c;
        if (c == '"') out += '"';
    }
    out += '"';
    return out;
}

CsvWriter::CsvWriter(const std::string& path) : out_(path, std::ios::binary) {
    if (!out_) throw ConfigError("cannot open for writing: " + path);
}

void CsvWriter::text_row(const std::vector<std::string>& fields) {
    for (size_t i = 0; i < fields.size(); ++i) {
        if (i) out_ << ',';
        out_ << csv_escape(fields[i]);
    }
    out_ << '\n';
}

void CsvWriter::row(const std::vector<double>& values) {
    for (size_t i = 0; i < values.size(); ++i) {
        if (i) out_ << ',';
        out_ << format_number(values[i]);
    }
    out_ << '\n';
}

void write_grid_csv(const std::string& path, const Eigen::VectorXd& x,
                    const Eigen::VectorXd& y, const Eigen::ArrayXXd& f) {
    if (f.rows() != x.size() || f.cols() != y.size())
        throw BadParameter("grid snapshot: field shape does not match coordinates");
    CsvWriter w(path);
    std::vector<std::string> head;
    head.push_back("x\\y");
    for (Eigen::Index j = 0; j < y.size(); ++j) head.push_back(format_number(y[j]));
    w.text_row(head);
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        std::vector<double> r;
        r.push_back(x[i]);
        for (Eigen::Index j = 0; j < y.size(); ++j) r.push_back(f(i, j));
        w.row(r);
    }
}

void write_profile_csv(
    const std::string& path, const Eigen::VectorXd& x,
    const std::vector<std::pair<std::string, Eigen::ArrayXd>>& columns) {
    for (const auto& c : columns)
        if (c.second.size() != x.size())
            throw BadParameter("profile snapshot: column '" + c.first +
                               "' does not match the node count");
    CsvWriter w(path);
    std::vector<std::string> head{"x"};
    for (const auto& c : columns) head.push_back(c.first);
    w.text_row(head);
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        std::vector<double> r{x[i]};
        for (const auto& c : columns) r.push_back(c.second[i]);
        w.row(r);
    }
}

}  // namespace inext
