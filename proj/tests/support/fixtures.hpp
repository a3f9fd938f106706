#pragma once

#include <string>

#include "tsrkit/core.hpp"
#include "tsrkit/textio.hpp"

namespace testsupport {

inline std::string fixture_path(const std::string& name) {
    return std::string(TSRKIT_FIXTURE_DIR) + "/" + name;
}

inline tsrkit::Tsr load_tsr(const std::string& name) {
    return tsrkit::validate_tsr(tsrkit::parse_file(fixture_path(name)));
}

inline tsrkit::MixTs load_mixts(const std::string& name) {
    return tsrkit::validate_mixts(tsrkit::parse_file(fixture_path(name)));
}

inline tsrkit::Tsr tsr_from_text(const std::string& text) {
    return tsrkit::validate_tsr(tsrkit::parse(text));
}

inline tsrkit::MixTs mixts_from_text(const std::string& text) {
    return tsrkit::validate_mixts(tsrkit::parse(text));
}

}  // namespace testsupport
