#pragma once

#include <string>
#include <utility>
#include <vector>

namespace sporadic {

/// One verification record: what was checked, with which parameters, what
/// was observed versus required, and the verdict. The CLI renders these as
/// table rows or JSON objects; tests assert on `pass`.
struct CheckResult {
    std::string check;
    std::vector<std::pair<std::string, std::string>> params;
    std::string observed;
    std::string required;
    bool pass = false;

    std::string params_str() const {
        std::string s;
        for (const auto& [k, v] : params) {
            if (!s.empty()) s += " ";
            s += k + "=" + v;
        }
        return s;
    }

    std::string line() const {
        return (pass ? "pass  " : "FAIL  ") + check + "  " + params_str() +
               "  observed=" + observed + " required=" + required;
    }
};

}  // namespace sporadic
