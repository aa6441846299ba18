#pragma once

#define XRRMETA_VERSION "0.1.0"
#define XRRMETA_JSON_SCHEMA_VERSION 1
