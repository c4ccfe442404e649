#include <stdio.h>
#include <string.h>

#include "tightcut.h"

#define CHECK(call)                                                            \
  do {                                                                         \
    enum TcStatus s_ = (call);                                                 \
    if (s_ != TC_STATUS_OK) {                                                  \
      fprintf(stderr, "%s: %s (%s)\n", #call, tc_status_name(s_),              \
              tc_last_error_message());                                        \
      return 1;                                                                \
    }                                                                          \
  } while (0)

int main(void) {
  const uint32_t ends[] = {0, 1, 1, 2, 2, 3, 3, 4, 4, 5, 5, 0};
  const uint32_t shore[] = {0, 1, 2};
  TcGraph *g = NULL;
  TcCertificate *cert = NULL;
  bool tight = false;
  char *json = NULL;

  CHECK(tc_graph_new(6, ends, 6, &g));
  CHECK(tc_is_tight(g, shore, 3, &tight));
  if (!tight) {
    fprintf(stderr, "C6 cut should be tight\n");
    return 1;
  }
  CHECK(tc_decompose(g, shore, 3, &cert));
  CHECK(tc_certificate_to_json(cert, &json));
  if (tc_certificate_r(cert) != 1 || strstr(json, "\"r\": 1") == NULL) {
    fprintf(stderr, "unexpected certificate\n");
    return 1;
  }
  CHECK(tc_verify_certificate(g, shore, 3, cert));

  TcGraph *bad = NULL;
  if (tc_graph_parse("p 2 1\ne 0 7\n", &bad) != TC_STATUS_PARSE_ERROR || bad != NULL) {
    fprintf(stderr, "parse error expected\n");
    return 1;
  }

  tc_string_free(json);
  tc_certificate_free(cert);
  tc_graph_free(g);
  printf("ok\n");
  return 0;
}
