import init, { simulate, probe, coupling_sweep } from "./pkg/nanocontour_wasm.js";

const $ = (id) => document.getElementById(id);
const num = (id) => parseFloat($(id).value);

function frame(canvas, xs, ys, equal) {
  const pad = 40;
  let [x0, x1] = [Math.min(...xs), Math.max(...xs)];
  let [y0, y1] = [Math.min(...ys), Math.max(...ys)];
  if (x1 === x0) { x0 -= 1; x1 += 1; }
  if (y1 === y0) { y0 -= 1; y1 += 1; }
  const w = canvas.width - 2 * pad, h = canvas.height - 2 * pad;
  let sx = w / (x1 - x0), sy = h / (y1 - y0);
  if (equal) sx = sy = Math.min(sx, sy);
  return {
    x: (v) => pad + (v - x0) * sx,
    y: (v) => canvas.height - pad - (v - y0) * sy,
    inv: (px, py) => [x0 + (px - pad) / sx, y0 + (canvas.height - pad - py) / sy],
    x0, x1, y0, y1,
  };
}

function line(ctx, f, xs, ys, color) {
  ctx.strokeStyle = color;
  ctx.beginPath();
  xs.forEach((x, i) => (i ? ctx.lineTo(f.x(x), f.y(ys[i])) : ctx.moveTo(f.x(x), f.y(ys[i]))));
  ctx.stroke();
}

function labels(ctx, canvas, f, xl, yl) {
  ctx.fillStyle = "#333";
  ctx.fillText(`${f.x0.toPrecision(3)}`, 40, canvas.height - 25);
  ctx.fillText(`${f.x1.toPrecision(3)} ${xl}`, canvas.width - 90, canvas.height - 25);
  ctx.fillText(`${f.y1.toPrecision(3)} ${yl}`, 4, 34);
  ctx.fillText(`${f.y0.toPrecision(3)}`, 4, canvas.height - 40);
}

function runLoop() {
  const out = $("run-out");
  let view;
  try {
    view = simulate($("path").value, num("kp"), num("ki"), num("kd"), $("coupling").checked);
  } catch (e) {
    out.textContent = `error: ${e}`;
    return;
  }
  const t = view.t(), eps = view.eps();
  const xr = view.x_ref(), yr = view.y_ref(), xa = view.x_act(), ya = view.y_act();

  const xy = $("xy"), c1 = xy.getContext("2d");
  c1.clearRect(0, 0, xy.width, xy.height);
  const f1 = frame(xy, [...xr, ...xa], [...yr, ...ya], true);
  line(c1, f1, xr, yr, "#1f77b4");
  line(c1, f1, xa, ya, "#d62728");
  labels(c1, xy, f1, "x nm", "y nm");

  const ec = $("eps"), c2 = ec.getContext("2d");
  c2.clearRect(0, 0, ec.width, ec.height);
  const f2 = frame(ec, t, eps, false);
  line(c2, f2, t, eps, "#d62728");
  labels(c2, ec, f2, "t s", "eps nm");

  out.textContent =
    `final revolution: rms ${view.final_rms.toFixed(4)} nm, max ${view.final_max.toFixed(4)} nm\n` +
    `whole run:        max ${view.full_max.toFixed(4)} nm`;
  view.free();
}

const R = 400;
let stage = [R * Math.SQRT1_2 + 40, R * Math.SQRT1_2 + 10];

function drawProbe() {
  const canvas = $("probe"), ctx = canvas.getContext("2d");
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  const f = frame(canvas, [-1.2 * R, 1.2 * R], [-1.2 * R, 1.2 * R], true);
  const ring = [...Array(361).keys()].map((d) => (d * Math.PI) / 180);
  line(ctx, f, ring.map((a) => R * Math.cos(a)), ring.map((a) => R * Math.sin(a)), "#1f77b4");

  const phi = (num("phi") * Math.PI) / 180;
  const cmd = [R * Math.cos(phi), R * Math.sin(phi)];
  const [dx, dy] = [stage[0] - cmd[0], stage[1] - cmd[1]];
  const out = $("probe-out");
  let v;
  try {
    v = probe(R, num("phi"), dx, dy);
  } catch (e) {
    out.textContent = `error: ${e}`;
    return;
  }
  const foot = [stage[0] + v[3], stage[1] + v[4]];
  const dot = (p, color) => {
    ctx.fillStyle = color;
    ctx.beginPath();
    ctx.arc(f.x(p[0]), f.y(p[1]), 4, 0, 2 * Math.PI);
    ctx.fill();
  };
  line(ctx, f, [cmd[0] - 300 * Math.sin(phi), cmd[0] + 300 * Math.sin(phi)],
    [cmd[1] + 300 * Math.cos(phi), cmd[1] - 300 * Math.cos(phi)], "#aaa");
  line(ctx, f, [stage[0], foot[0]], [stage[1], foot[1]], "#2ca02c");
  dot(cmd, "#1f77b4");
  dot(stage, "#d62728");
  dot(foot, "#2ca02c");
  out.textContent =
    `stage offset   (${dx.toFixed(2)}, ${dy.toFixed(2)}) nm\n` +
    `exact          ${v[0].toFixed(4)} nm\n` +
    `first order    ${v[1].toFixed(4)} nm\n` +
    `second order   ${v[2].toFixed(4)} nm\n` +
    `components     (${v[3].toFixed(4)}, ${v[4].toFixed(4)}) nm`;
}

function runSweep() {
  const out = $("sweep-out");
  const kdMax = num("kdmax"), count = parseInt($("count").value, 10);
  out.textContent = "running...";
  setTimeout(() => {
    let values;
    try {
      values = coupling_sweep($("path").value, num("kp"), num("ki"), kdMax, count);
    } catch (e) {
      out.textContent = `error: ${e}`;
      return;
    }
    const kd = [...values.keys()].map((i) => (count > 1 ? (kdMax * i) / (count - 1) : 0));
    const finite = kd.map((k, i) => [k, values[i]]).filter(([, v]) => Number.isFinite(v));
    const canvas = $("curve"), ctx = canvas.getContext("2d");
    ctx.clearRect(0, 0, canvas.width, canvas.height);
    if (finite.length) {
      const f = frame(canvas, finite.map((p) => p[0]), finite.map((p) => p[1]), false);
      line(ctx, f, finite.map((p) => p[0]), finite.map((p) => p[1]), "#9467bd");
      labels(ctx, canvas, f, "k_d", "rms nm");
    }
    let best = 0;
    values.forEach((v, i) => { if (v < values[best]) best = i; });
    const unstable = values.length - finite.length;
    out.textContent = `best k_d ${kd[best].toPrecision(4)}: rms ${values[best].toFixed(4)} nm` +
      (unstable ? `; ${unstable} unstable` : "");
  }, 0);
}

await init();
$("run").addEventListener("click", runLoop);
$("sweep").addEventListener("click", runSweep);
$("phi").addEventListener("input", drawProbe);
$("probe").addEventListener("click", (ev) => {
  const canvas = $("probe");
  const f = frame(canvas, [-1.2 * R, 1.2 * R], [-1.2 * R, 1.2 * R], true);
  const rect = canvas.getBoundingClientRect();
  stage = f.inv(ev.clientX - rect.left, ev.clientY - rect.top);
  drawProbe();
});
runLoop();
drawProbe();
