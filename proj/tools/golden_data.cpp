// frozen copy of golden/cdd_sweep_golden.csv (no timestamp line); after an
// intentional change, refresh both via `dd_efficacy verify` with a config
// containing `write_golden = 1`, then paste the file here
extern const char* const kGoldenCsv =
    R"CSV(# config-hash: bdfd838718c46007, seed: 42, grid: levels:0..2
phiB,phiSB,eta,n,measure,value,flag
0.01,0.01,0,0,phi_sb_exact_median,0.0099999999999997955,ok
0.01,0.01,0,0,phi_sb_bound,0.01,ok
0.01,0.01,0,1,phi_sb_exact_median,0.00029627746194519792,ok
0.01,0.01,0,1,phi_sb_bound,0.0016000000000000001,ok
0.01,0.01,0,1,phi_sb_estimator_median,0.00029585030618819064,ok
0.01,0.01,0,2,phi_sb_exact_median,7.0867338839917615e-05,ok
0.01,0.01,0,2,phi_sb_bound,0.00051200000000000009,ok
0.01,0.01,0,2,phi_sb_estimator_median,7.0747650487616373e-05,ok
)CSV";
