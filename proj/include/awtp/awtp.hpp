#ifndef AWTP_AWTP_HPP
#define AWTP_AWTP_HPP

#include "error.hpp"
#include "random.hpp"
#include "fields.hpp"
#include "polynomial.hpp"
#include "extension.hpp"
#include "linalg.hpp"
#include "amd.hpp"
#include "evasive.hpp"
#include "frs.hpp"
#include "code.hpp"
#include "channel.hpp"
#include "smt.hpp"
#include "params_io.hpp"

#endif
