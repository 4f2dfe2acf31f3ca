#pragma once

#include "diracflow/algebra.hpp"
#include "diracflow/bracket_flow.hpp"
#include "diracflow/closed_form.hpp"
#include "diracflow/convergence.hpp"
#include "diracflow/errors.hpp"
#include "diracflow/exp_poly.hpp"
#include "diracflow/identities.hpp"
#include "diracflow/json_io.hpp"
#include "diracflow/matrix_functions.hpp"
#include "diracflow/matrix_model.hpp"
#include "diracflow/power_series.hpp"
#include "diracflow/rational.hpp"
#include "diracflow/report.hpp"
#include "diracflow/series.hpp"
#include "diracflow/text_format.hpp"
