#include "hypoc/report.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace hypoc {

std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void AuditLog::add(const std::string& name, double margin, double scale, double tol) {
    Audit a;
    a.name = name;
    a.margin = margin;
    a.scale = scale;
    a.tol = tol;
    a.pass = margin >= -tol * scale;
    audits_.push_back(a);
}

void AuditLog::add_flag(const std::string& name, bool ok) {
    Audit a;
    a.name = name;
    a.margin = ok ? 0.0 : -1.0;
    a.scale = 1.0;
    a.tol = 0.0;
    a.pass = ok;
    audits_.push_back(a);
}

bool AuditLog::all_pass() const {
    for (const auto& a : audits_)
        if (!a.pass) return false;
    return true;
}

std::string AuditLog::table() const {
    std::ostringstream os;
    for (const auto& a : audits_) {
        os << (a.pass ? "[ok]   " : "[FAIL] ") << a.name << "  margin=" << format_g17(a.margin)
           << "  slack=" << format_g17(a.tol * a.scale) << "\n";
    }
    return os.str();
}

CsvWriter::CsvWriter(const std::string& path, const std::vector<std::string>& columns)
    : path_(path), out_(path), ncols_(columns.size()) {
    if (!out_) throw std::runtime_error("csv: cannot open '" + path + "' for writing");
    for (std::size_t i = 0; i < columns.size(); ++i) out_ << (i ? "," : "") << columns[i];
    out_ << "\n";
}

void CsvWriter::row(const std::vector<double>& values) {
    if (values.size() != ncols_) throw std::logic_error("csv: column count mismatch");
    for (std::size_t i = 0; i < values.size(); ++i) out_ << (i ? "," : "") << format_g17(values[i]);
    out_ << "\n";
}

} // namespace hypoc
