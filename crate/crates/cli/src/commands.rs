use integrality::asymptotic::{
    is_nondegenerate_with_cap, nondeg_row_bound_check, Asymptotic, DensityMode, Reduction, DEFAULT_DENSITY_CAP,
};
use integrality::covering::{
    box_cover_bound, choose_k, cover_box, cover_optimal_bruteforce, cover_trivial, verify_cover, BruteForceCaps, Cover,
    PointSet,
};
use integrality::linalg::{delta_with_cap, hnf, DeltaMode, IntMatrix, DEFAULT_SUBMATRIX_CAP};
use integrality::oracle::{
    check_integrality, integer_hull_points_with_caps, integrality_number_bruteforce_with_caps, polyhedron_vertices_with_caps,
    InumCaps, OracleCaps,
};
use integrality::wsynth::{certify, is_tu, synthesize_with_cap, Route, SynthMode, TuReport};
use integrality::Error;
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::input::InstanceFile;
use crate::json::{int, int_matrix, int_points, ints, points, rat, rats, uint};
use crate::{method_name, Command, Failure, Flags, EXIT_FALSE, EXIT_OK};

type CmdResult = Result<(Value, i32), Failure>;

const DEFAULT_HYPERPLANE_CAP: u128 = 100_000;

fn ok(v: Value) -> CmdResult {
    Ok((v, EXIT_OK))
}

fn holds(v: Value, property: bool) -> CmdResult {
    Ok((v, if property { EXIT_OK } else { EXIT_FALSE }))
}

fn mode(cmd: Command, flags: &Flags) -> Result<&'static str, Failure> {
    let modes = cmd.modes();
    match &flags.mode {
        None => Ok(modes.first().copied().unwrap_or("")),
        Some(m) => modes.iter().copied().find(|x| x == m).ok_or_else(|| {
            if modes.is_empty() {
                Failure::input(format!("{cmd} takes no --mode"))
            } else {
                Failure::input(format!("unknown mode {m:?} for {cmd}; expected one of {}", modes.join(", ")))
            }
        }),
    }
}

fn oracle_caps(flags: &Flags) -> OracleCaps {
    match flags.cap {
        Some(c) => OracleCaps {
            bases: c,
            lattice: c,
            fibers: c,
        },
        None => OracleCaps::default(),
    }
}

fn big(x: u128) -> Value {
    int(&BigInt::from(x))
}

pub(crate) fn dispatch(cmd: Command, inst: &InstanceFile, flags: &Flags) -> CmdResult {
    let mode = mode(cmd, flags)?;
    let a = &inst.a;
    let cap = flags.cap.unwrap_or(DEFAULT_SUBMATRIX_CAP);
    match cmd {
        Command::Hnf => {
            let f = hnf(a)?;
            ok(json!({
                "U": int_matrix(&f.u),
                "H": int_matrix(&f.h),
                "row_permutation": f.row_permutation,
                "ell": f.ell,
                "alphas": ints(&f.alphas),
                "delta": int(&f.delta),
            }))
        }
        Command::Delta => {
            let m = if mode == "max" { DeltaMode::Max } else { DeltaMode::FullRank };
            ok(json!({ "delta": int(&delta_with_cap(a, m, cap)?) }))
        }
        Command::Cover => cover(a, mode, flags),
        Command::Synthesize => {
            let m = match mode {
                "part1" => SynthMode::Part1,
                "part2" => SynthMode::Part2,
                _ => SynthMode::Best,
            };
            let s = synthesize_with_cap(a, m, cap)?;
            let r = &s.report;
            holds(
                json!({
                    "route": match s.route { Route::Part1 => "part1", Route::Part2 => "part2" },
                    "k": s.k(),
                    "W": int_matrix(&s.w),
                    "c_rows": s.original_c_rows(),
                    "certified": true,
                    "bound": {
                        "k": r.k,
                        "delta": int(&r.delta),
                        "ell": r.ell,
                        "r": r.r,
                        "delta_a": int(&r.delta_a),
                        "delta_a2": r.delta_a2.as_ref().map(int),
                        "c_a": uint(&r.c_a),
                        "c_a2": uint(&r.c_a2),
                        "box_factor": r.box_factor,
                        "bound": r.bound,
                        "holds": r.holds(),
                    },
                }),
                r.holds(),
            )
        }
        Command::Certify => {
            let w = inst.w()?;
            let c_rows: Vec<usize> = (0..a.rows()).filter(|&i| !signed_unit(a.row(i))).collect();
            let tu = tu_json(&is_tu(w, flags.method)?);
            match certify(a, &c_rows, w) {
                Ok(cert) => ok(json!({
                    "certified": true,
                    "k": cert.k(),
                    "c_rows": c_rows,
                    "tu": tu,
                    "witnesses": cert
                        .witnesses
                        .iter()
                        .map(|(row, x)| json!({ "row": row, "coefficients": rats(x) }))
                        .collect::<Vec<_>>(),
                })),
                Err(Error::Certify(e)) => holds(
                    json!({ "certified": false, "k": w.rows(), "c_rows": c_rows, "tu": tu, "reason": e.to_string() }),
                    false,
                ),
                Err(e) => Err(e.into()),
            }
        }
        Command::Verify => {
            let p = inst.instance()?;
            let w = inst.w()?;
            let c = check_integrality(&p, w, &oracle_caps(flags))?;
            holds(
                json!({
                    "k": w.rows(),
                    "integral": c.integral,
                    "candidates": c.candidates,
                    "fractional_vertex": c.fractional_vertex.map(|v| rats(&v.point)),
                }),
                c.integral,
            )
        }
        Command::Ip => {
            let p = inst.instance()?;
            let caps = oracle_caps(flags);
            let h = integer_hull_points_with_caps(&p, &caps)?;
            let lp = polyhedron_vertices_with_caps(&p, &caps)?;
            ok(json!({
                "empty": h.is_empty(),
                "lattice_points": h.points.len(),
                "vertices": int_points(&h.vertices),
                "lp_vertices": points(&lp.points()),
                "lp_integral": lp.all_integral(),
            }))
        }
        Command::GoodSet => {
            let b = inst.rhs()?;
            let ctx = Asymptotic::with_cap(a, cap)?;
            let rep = ctx.in_good_set(b)?;
            let reduction = match ctx.reduce_and_solve(b)? {
                Reduction::InfeasibleLp => json!({ "kind": "infeasible_lp" }),
                Reduction::NotApplicable { .. } => json!({ "kind": "not_applicable" }),
                Reduction::Reduced {
                    basis,
                    w,
                    feasible,
                    witness,
                } => json!({
                    "kind": "reduced",
                    "basis": basis,
                    "W": int_matrix(&w),
                    "feasible": feasible,
                    "witness": witness.as_deref().map(ints),
                }),
            };
            holds(
                json!({
                    "in_good_set": rep.in_good_set,
                    "empty_p": rep.empty_p,
                    "violations": rep
                        .violations
                        .iter()
                        .map(|(basis, j)| json!({ "basis": basis, "row": j }))
                        .collect::<Vec<_>>(),
                    "delta_max": int(ctx.delta_max()),
                    "slack": int(ctx.slack()),
                    "reduction": reduction,
                }),
                rep.in_good_set,
            )
        }
        Command::Hyperplanes => {
            let ctx = Asymptotic::new(a)?;
            let list = ctx.bad_hyperplanes(flags.cap.unwrap_or(DEFAULT_HYPERPLANE_CAP))?;
            ok(json!({
                "delta_max": int(ctx.delta_max()),
                "slack": int(ctx.slack()),
                "families": ctx
                    .hyperplane_families()
                    .iter()
                    .map(|f| json!({
                        "basis": f.basis,
                        "row": f.j,
                        "det": int(&f.det),
                        "coeffs": ints(&f.coeffs),
                        "residues": int(&f.residues),
                    }))
                    .collect::<Vec<_>>(),
                "count": list.len(),
                "hyperplanes": list
                    .iter()
                    .map(|h| json!({ "basis": h.basis, "row": h.j, "r": int(&h.r), "coeffs": ints(&h.coeffs) }))
                    .collect::<Vec<_>>(),
            }))
        }
        Command::Density => {
            if flags.t == 0 {
                return Err(Failure::input("--t must be at least 1"));
            }
            let dm = if mode == "sample" {
                DensityMode::Sample {
                    seed: flags.seed,
                    samples: flags.samples,
                }
            } else {
                DensityMode::Enumerate
            };
            let ctx = Asymptotic::new(a)?;
            let mut table = Vec::new();
            let mut off = 0u128;
            for t in 1..=flags.t {
                let est = ctx.density_estimate(t, dm, flags.cap.unwrap_or(DEFAULT_DENSITY_CAP))?;
                off += est.bad_off_hyperplanes;
                let sampled = matches!(dm, DensityMode::Sample { .. });
                table.push(json!({
                    "t": t,
                    "total": big(est.total),
                    "good": big(est.good),
                    "empty": big(est.empty),
                    "fraction": rat(&est.fraction),
                    "fraction_f64": est.fraction_f64(),
                    "std_error": sampled.then(|| est.std_error()),
                }));
            }
            ok(json!({
                "delta_max": int(ctx.delta_max()),
                "slack": int(ctx.slack()),
                "bad_off_hyperplanes": big(off),
                "table": table,
            }))
        }
        Command::Nondegen => {
            let nd = is_nondegenerate_with_cap(a, cap)?;
            let bound = if nd { Some(nondeg_row_bound_check(a)?) } else { None };
            holds(
                json!({
                    "nondegenerate": nd,
                    "m": a.rows(),
                    "n": a.cols(),
                    "delta": int(&delta_with_cap(a, DeltaMode::FullRank, cap)?),
                    "row_bound_holds": bound,
                }),
                nd,
            )
        }
        Command::Inum => {
            let p = inst.instance()?;
            let kmax = flags.kmax.unwrap_or(p.n());
            let caps = InumCaps {
                candidates: flags.cap.unwrap_or(InumCaps::default().candidates),
                oracle: OracleCaps::default(),
            };
            match integrality_number_bruteforce_with_caps(&p, flags.entry_bound, kmax, &caps)? {
                Some(r) => ok(json!({ "k": r.k, "W": int_matrix(&r.w), "tried": big(r.tried), "kmax": kmax })),
                None => holds(json!({ "k": null, "W": null, "kmax": kmax }), false),
            }
        }
    }
}

fn signed_unit(row: &[BigInt]) -> bool {
    let nz: Vec<&BigInt> = row.iter().filter(|x| !x.is_zero()).collect();
    nz.len() == 1 && nz[0].abs().is_one()
}

fn tu_json(r: &TuReport) -> Value {
    json!({
        "is_tu": r.is_tu,
        "method": method_name(r.method),
        "checked": big(r.checked),
        "violation": r.violation,
    })
}

fn cover_json(cover: &Cover, target: &PointSet) -> Value {
    json!({
        "cost": cover.cost(),
        "points": target.len(),
        "B": points(cover.b().points()),
        "T": points(cover.t().points()),
        "verified": verify_cover(target, cover),
    })
}

fn cover(a: &IntMatrix, mode: &str, flags: &Flags) -> CmdResult {
    let c = PointSet::from_int_columns(a);
    match mode {
        "optimal" => {
            let caps = BruteForceCaps {
                max_grid: match flags.cap {
                    Some(x) => x.to_usize().unwrap_or(usize::MAX),
                    None => BruteForceCaps::default().max_grid,
                },
                ..BruteForceCaps::default()
            };
            let cov = cover_optimal_bruteforce(&c, None, caps)?;
            ok(cover_json(&cov, &c))
        }
        "box" => {
            let f = hnf(a)?;
            if f.ell == 0 {
                let origin = PointSet::from_points(0, [Vec::new()])?;
                let mut v = cover_json(&cover_trivial(&origin)?, &origin);
                v["alphas"] = json!([]);
                return ok(v);
            }
            let alphas: Vec<u64> = f
                .alphas
                .iter()
                .map(|x| x.to_u64().ok_or_else(|| Failure::input(format!("alpha {x} does not fit 64 bits"))))
                .collect::<Result<_, _>>()?;
            let kc = choose_k(&alphas)?;
            let cov = cover_box(&f.lambda(), &kc)?;
            let mut v = cover_json(&cov, cov.covered());
            v["alphas"] = json!(kc.alphas_in_input_order());
            v["k"] = json!(kc.k_in_input_order());
            v["bound"] = json!(box_cover_bound(kc.delta()));
            ok(v)
        }
        _ => ok(cover_json(&cover_trivial(&c)?, &c)),
    }
}
