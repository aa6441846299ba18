#pragma once

#include <string>
#include <utility>

#include "xrrmeta/dataset.hpp"

inline std::string data_path(const std::string& name) {
    return std::string(XRRMETA_DATA_DIR) + "/" + name;
}

inline xrrmeta::StudyRecord rec(std::string id, int n1, int y1, int n2, int y2) {
    return {std::move(id), n1, y1, n2, y2};
}
