// tests/test_main.cc

// Copyright 2026 mcse authors
// Apache 2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>
