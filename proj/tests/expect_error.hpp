#pragma once

#include <doctest.h>

#include "cutlab/error.hpp"

// Evaluates expr and checks that it raises cutlab::Error with the given code.
#define CHECK_ERROR_CODE(expr, expected)                                           \
  do {                                                                              \
    bool raised_ = false;                                                           \
    try {                                                                           \
      (void)(expr);                                                                 \
    } catch (const cutlab::Error& err_) {                                           \
      raised_ = true;                                                               \
      CHECK_MESSAGE(err_.code() == (expected), "raised: " << err_.what());          \
    }                                                                               \
    CHECK_MESSAGE(raised_, "no cutlab::Error raised by " #expr);                    \
  } while (false)
