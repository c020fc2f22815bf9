import init, { bound_table, build_and_verify, shift_profile } from "./pkg/sidon_wasm.js";

const $ = (id) => document.getElementById(id);
const num = (id) => Number($(id).value);

function fail(out, e) {
  out.innerHTML = "";
  const p = document.createElement("p");
  p.className = "err";
  p.textContent = String(e);
  out.appendChild(p);
}

function table(rows, cols) {
  const t = document.createElement("table");
  const head = t.insertRow();
  for (const c of cols) {
    const th = document.createElement("th");
    th.textContent = c;
    head.appendChild(th);
  }
  for (const r of rows) {
    const tr = t.insertRow();
    for (const c of cols) tr.insertCell().textContent = r[c] ?? "";
  }
  return t;
}

function ratioValue(s) {
  const [a, b] = s.split("/").map(Number);
  return b ? a / b : a;
}

function runBounds() {
  const out = $("bout");
  try {
    const rows = JSON.parse(bound_table(num("bq"), num("bkmin"), num("bkmax"), num("brmax")));
    for (const r of rows) r.ratio = `${r.ratio} ≈ ${ratioValue(r.ratio).toFixed(4)}`;
    out.innerHTML = "";
    out.appendChild(table(rows, ["n", "k", "q", "r", "d", "sphere_packing", "this_paper", "fw2021", "zt2023", "ratio"]));
  } catch (e) {
    fail(out, e);
  }
}

// parameters of the last successful build, reused by the profile panel
let built = null;

function runBuild() {
  const out = $("cout");
  const args = [num("cc"), num("cq"), num("ck"), num("cn"), num("cr")];
  try {
    const res = JSON.parse(build_and_verify(...args));
    const rep = res.report;
    out.innerHTML = "";
    const pre = document.createElement("pre");
    pre.textContent = [
      `certified        ${res.certified}${rep.failed_step ? " (failed at " + rep.failed_step + ")" : ""}`,
      `generators       ${rep.num_generators} (${rep.num_orbits_distinct} distinct orbits)`,
      `orbit length     ${rep.orbit_length}`,
      `total size       ${rep.total_size}`,
      `formula size     ${rep.formula_size ?? "-"}${rep.match === false ? "  (differs)" : ""}`,
      `min distance     ${rep.min_distance ?? "-"}`,
      rep.discrepancy_note ? `note             ${rep.discrepancy_note}` : "",
    ].filter(Boolean).join("\n");
    out.appendChild(pre);
    const gens = res.generators.map((g, i) => ({ "#": i, label: g.label, basis: g.basis.join(", ") }));
    out.appendChild(table(gens, ["#", "label", "basis"]));

    built = args;
    for (const id of ["pa", "pb"]) {
      const sel = $(id);
      sel.innerHTML = "";
      res.generators.forEach((g, i) => sel.add(new Option(`${i}: ${g.label}`, i)));
    }
    $("pb").value = res.generators.length > 1 ? 1 : 0;
    $("pgo").disabled = false;
  } catch (e) {
    fail(out, e);
  }
}

function runProfile() {
  const out = $("pout");
  if (!built) return;
  try {
    const res = JSON.parse(shift_profile(...built, num("pa"), num("pb")));
    out.innerHTML = "";
    const pre = document.createElement("pre");
    const total = res.shifts_checked || 1;
    const lines = res.histogram.map((c, d) => {
      const w = Math.max(c ? 1 : 0, Math.round((300 * c) / total));
      return `dim ${d}: ${String(c).padStart(6)}  <span class="bar" style="width:${w}px"></span>`;
    });
    pre.innerHTML = [
      ...lines,
      "",
      `shifts checked   ${res.shifts_checked} of ${res.projective_shifts}`,
      `coincident       ${res.coincidences}`,
      `min distance     ${res.min_distance ?? "-"}`,
      `shift test ok    ${res.ok}`,
      `pair-map test ok ${res.pairwise_ok}`,
    ].join("\n");
    out.appendChild(pre);
  } catch (e) {
    fail(out, e);
  }
}

await init();
$("bgo").onclick = runBounds;
$("cgo").onclick = runBuild;
$("pgo").onclick = runProfile;
runBounds();
