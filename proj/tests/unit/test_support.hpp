#pragma once

#include <string>

#include "admmpd/code_graph.hpp"

namespace test_support {

inline std::string data_path(const std::string &name) { return std::string(ADMMPD_DATA_DIR) + "/" + name; }

inline const admmpd::TannerGraph &hamming() {
    static const admmpd::TannerGraph g = admmpd::load_alist(data_path("hamming74.alist"));
    return g;
}

inline const admmpd::TannerGraph &tanner155() {
    static const admmpd::TannerGraph g = admmpd::load_alist(data_path("tanner155.alist"));
    return g;
}

} // namespace test_support
