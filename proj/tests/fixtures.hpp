#pragma once

#include <fstream>
#include <regex>
#include <string>
#include <vector>

#include "json.hpp"

#include "gvb/exact.hpp"

namespace fixtures {

inline nlohmann::json load(const std::string& name) {
    std::ifstream in(std::string(GVB_DATA_DIR) + "/reference/" + name);
    if (!in) throw std::runtime_error("missing fixture " + name);
    return nlohmann::json::parse(in);
}

/// Terms like "2/3m_{6}" or "m_{12}+m_{13}" as (coefficient, 1-based index).
inline std::vector<std::pair<gvb::Rational, int>> element_terms(const std::string& s) {
    std::vector<std::pair<gvb::Rational, int>> out;
    static const std::regex term(R"(([+-]?)([0-9/]*)m_\{([0-9]+)\})");
    for (auto it = std::sregex_iterator(s.begin(), s.end(), term); it != std::sregex_iterator(); ++it) {
        gvb::Rational c = (*it)[2].str().empty() ? gvb::Rational(1) : gvb::parse_rational((*it)[2].str());
        if ((*it)[1].str() == "-") c = -c;
        out.emplace_back(c, std::stoi((*it)[3].str()));
    }
    return out;
}

inline std::string strip_cdot(std::string s) {
    for (std::size_t p; (p = s.find("\\cdot")) != std::string::npos;) s.erase(p, 5);
    return s;
}

/// Crossing vector from a key such as "110".
inline std::vector<int> crossings(const std::string& key) {
    std::vector<int> c;
    for (char ch : key) c.push_back(ch - '0');
    return c;
}

}  // namespace fixtures
