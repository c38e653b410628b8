#pragma once

#include "nuset/error.hpp"
#include "nuset/word.hpp"
#include "nuset/report.hpp"
#include "nuset/presheaf.hpp"
#include "nuset/shapes.hpp"
#include "nuset/indexed.hpp"
#include "nuset/equivalence.hpp"
#include "nuset/param.hpp"
#include "nuset/stream.hpp"
#include "nuset/json_io.hpp"
