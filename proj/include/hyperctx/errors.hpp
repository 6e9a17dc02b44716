#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hyperctx {

/// Structured validation issue: a stable machine code plus human detail.
struct Issue {
    std::string code;
    std::string detail;
};

/// Domain error carrying a stable code string (same vocabulary as Issue::code).
class Error : public std::runtime_error {
  public:
    Error(std::string code, const std::string& detail)
        : std::runtime_error(code + ": " + detail), code_(std::move(code)) {}

    const std::string& code() const { return code_; }

  private:
    std::string code_;
};

/// Thrown by constructors that reject a structurally invalid object outright;
/// carries the full issue list so callers can report every violation at once.
class ValidationError : public Error {
  public:
    explicit ValidationError(std::vector<Issue> issues)
        : Error(issues.empty() ? "ValidationError" : issues.front().code, summarize(issues)),
          issues_(std::move(issues)) {}

    const std::vector<Issue>& issues() const { return issues_; }

  private:
    static std::string summarize(const std::vector<Issue>& issues) {
        std::string s;
        for (const auto& issue : issues) {
            if (!s.empty()) s += "; ";
            s += issue.detail;
        }
        return s;
    }

    std::vector<Issue> issues_;
};

}  // namespace hyperctx
