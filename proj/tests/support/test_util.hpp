#pragma once

#include <doctest.h>

#include <functional>

#include "marketnet/error.hpp"

namespace test_util {

// Runs fn, which must throw a marketnet::Error, and returns its code.
inline marketnet::errc code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const marketnet::Error& e) {
    return e.code();
  }
  FAIL("expected a marketnet::Error");
  return marketnet::errc::io_error;
}

}  // namespace test_util
