#include <stdio.h>
#include <assert.h>
#include "qsteer.h"

int main(void) {
    printf("qsteer %s\n", qsteer_version());

    QsteerLambda *lam = NULL;
    assert(qsteer_lambda_depolarizing(2, 0.5, &lam) == QSTEER_STATUS_OK);

    QsteerReport report;
    assert(qsteer_report(lam, QSTEER_SCENARIO_EPR, &report) == QSTEER_STATUS_OK);
    printf("sum_ab=%.9f sum_ac=%.9f total=%.9f bound=%.1f ab:%d ac:%d\n",
           report.sum_ab, report.sum_ac, report.total, report.bound_total,
           report.steerable_ab, report.steerable_ac);
    qsteer_lambda_free(lam);

    QsteerThreshold th;
    assert(qsteer_threshold_depolarizing(2, &th) == QSTEER_STATUS_OK);
    printf("threshold p*=%.6f sum_ab(p*)=%.6f\n", th.p_star, th.sum_ab);

    QsteerLambda *bad = NULL;
    assert(qsteer_lambda_depolarizing(2, 2.0, &bad) == QSTEER_STATUS_INVALID_INPUT);
    printf("error surface: %s\n", qsteer_last_error_message());
    return 0;
}
