#pragma once

#include <fstream>
#include <string>
#include <vector>

namespace hypoc {

// Inequality audit record: margin is RHS - LHS of the audited inequality,
// scale fixes the slack budget, pass means margin >= -tol * scale.
struct Audit {
    std::string name;
    double margin = 0;
    double scale = 1;
    double tol = 1e-8;
    bool pass = false;
};

class AuditLog {
  public:
    void add(const std::string& name, double margin, double scale, double tol);
    void add_flag(const std::string& name, bool ok);
    bool all_pass() const;
    const std::vector<Audit>& entries() const { return audits_; }
    std::string table() const;

  private:
    std::vector<Audit> audits_;
};

// CSV with a fixed header; numbers printed with %.17g so identical runs are
// bit-identical.
class CsvWriter {
  public:
    CsvWriter(const std::string& path, const std::vector<std::string>& columns);
    void row(const std::vector<double>& values);
    const std::string& path() const { return path_; }

  private:
    std::string path_;
    std::ofstream out_;
    std::size_t ncols_ = 0;
};

std::string format_g17(double v);

} // namespace hypoc
