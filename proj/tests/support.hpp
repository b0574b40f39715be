#pragma once

#include "doctest.h"
#include "odraw/error.hpp"

#define CHECK_ERRC(expr, errc)                                    \
  do {                                                            \
    bool caught_ = false;                                         \
    try {                                                         \
      (void)(expr);                                               \
    } catch (const odraw::Error& e_) {                            \
      caught_ = true;                                             \
      CHECK_MESSAGE(e_.code() == (errc), e_.what());              \
    }                                                             \
    CHECK_MESSAGE(caught_, "expected odraw::Error from " #expr);  \
  } while (0)
