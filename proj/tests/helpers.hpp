#ifndef SVPORT_TESTS_HELPERS_HPP
#define SVPORT_TESTS_HELPERS_HPP

#include <stdexcept>
#include <utility>

#include "svport/error.hpp"

namespace helpers {

// Runs fn, which must throw svport::Error, and returns the code it threw.
template <typename Fn>
svport::ErrorCode error_code_of(Fn&& fn) {
    try {
        std::forward<Fn>(fn)();
    } catch (const svport::Error& e) {
        return e.code();
    }
    throw std::logic_error("expected an svport::Error");
}

// Runs fn, which must throw svport::Error, and returns its message.
template <typename Fn>
std::string error_message_of(Fn&& fn) {
    try {
        std::forward<Fn>(fn)();
    } catch (const svport::Error& e) {
        return e.what();
    }
    throw std::logic_error("expected an svport::Error");
}

}  // namespace helpers

#endif
