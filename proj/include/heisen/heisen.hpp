#pragma once

#include "heisen/admissibility.hpp"
#include "heisen/error.hpp"
#include "heisen/field.hpp"
#include "heisen/field_io.hpp"
#include "heisen/frame_report.hpp"
#include "heisen/gabor.hpp"
#include "heisen/heisenberg_group.hpp"
#include "heisen/interval_set.hpp"
#include "heisen/interval_set_json.hpp"
#include "heisen/oscillatory.hpp"
#include "heisen/rational.hpp"
#include "heisen/test_bank.hpp"
#include "heisen/translation.hpp"
#include "heisen/wavelet.hpp"
