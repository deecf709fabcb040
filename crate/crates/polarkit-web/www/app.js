import init, {
  sphere_state_json, ellipsoid_points, factor_angles_json,
} from "./pkg/polarkit_web.js";

const $ = (id) => document.getElementById(id);
const rad = (d) => (d * Math.PI) / 180;
const fmt = (x, n = 4) => (Math.abs(x) < 5e-13 ? 0 : x).toFixed(n);

// Orthographic camera with drag-to-rotate; z is drawn up.
class View {
  constructor(canvas, onChange) {
    this.c = canvas;
    this.g = canvas.getContext("2d");
    this.yaw = rad(35);
    this.pitch = rad(20);
    this.scale = canvas.width * 0.36;
    let drag = null;
    canvas.addEventListener("pointerdown", (e) => { drag = [e.clientX, e.clientY]; canvas.setPointerCapture(e.pointerId); });
    canvas.addEventListener("pointerup", () => { drag = null; });
    canvas.addEventListener("pointermove", (e) => {
      if (!drag) return;
      this.yaw += (e.clientX - drag[0]) * 0.01;
      this.pitch = Math.max(-1.5, Math.min(1.5, this.pitch + (e.clientY - drag[1]) * 0.01));
      drag = [e.clientX, e.clientY];
      onChange();
    });
  }

  // returns [sx, sy, depth]; depth > 0 faces the viewer
  project([x, y, z]) {
    const cy = Math.cos(this.yaw), sy = Math.sin(this.yaw);
    const cp = Math.cos(this.pitch), sp = Math.sin(this.pitch);
    const u = x * cy - y * sy;
    const v = x * sy + y * cy;
    const up = z * cp - v * sp;
    const depth = z * sp + v * cp;
    return [this.c.width / 2 + this.scale * u, this.c.height / 2 - this.scale * up, -depth];
  }

  clear() {
    this.g.clearRect(0, 0, this.c.width, this.c.height);
  }

  polyline(pts, color, width = 1, closed = false) {
    const g = this.g;
    for (let i = 0; i + 1 < pts.length + (closed ? 1 : 0); i++) {
      const a = this.project(pts[i]), b = this.project(pts[(i + 1) % pts.length]);
      g.globalAlpha = a[2] + b[2] >= 0 ? 1 : 0.3;
      g.strokeStyle = color;
      g.lineWidth = width;
      g.beginPath();
      g.moveTo(a[0], a[1]);
      g.lineTo(b[0], b[1]);
      g.stroke();
    }
    g.globalAlpha = 1;
  }

  dot(p, color, r = 5) {
    const [x, y, d] = this.project(p);
    this.g.globalAlpha = d >= 0 ? 1 : 0.5;
    this.g.fillStyle = color;
    this.g.beginPath();
    this.g.arc(x, y, r, 0, 2 * Math.PI);
    this.g.fill();
    this.g.globalAlpha = 1;
  }

  label(p, text, color) {
    const [x, y] = this.project(p);
    this.g.fillStyle = color;
    this.g.font = "12px system-ui";
    this.g.fillText(text, x + 4, y - 4);
  }

  arrow(from, to, color, width = 2) {
    this.polyline([from, to], color, width);
    this.dot(to, color, 3);
  }
}

function circle(radius, plane, n = 72) {
  const pts = [];
  for (let i = 0; i < n; i++) {
    const t = (2 * Math.PI * i) / n;
    const [a, b] = [radius * Math.cos(t), radius * Math.sin(t)];
    pts.push(plane === "xy" ? [a, b, 0] : plane === "xz" ? [a, 0, b] : [0, a, b]);
  }
  return pts;
}

function sphereWire(view, color) {
  for (const p of ["xy", "xz", "yz"]) view.polyline(circle(1, p), color, 1, true);
  const axes = [[1, 0, 0, "S1"], [0, 1, 0, "S2"], [0, 0, 1, "S3"]];
  for (const [x, y, z, name] of axes) {
    view.polyline([[-x, -y, -z], [x * 1.15, y * 1.15, z * 1.15]], "#bbb");
    view.label([x * 1.18, y * 1.18, z * 1.18], name, "#666");
  }
}

function bindOutputs(ids, onInput) {
  for (const id of ids) {
    const el = $(id);
    const out = el.nextElementSibling;
    const show = () => { if (out && out.tagName === "OUTPUT") out.textContent = el.value; };
    el.addEventListener("input", () => { show(); onInput(); });
    show();
  }
}

// Boost panel

const sphereView = new View($("sphere"), () => drawBoost());
const N_LAT = 14, N_LON = 24;

function unit(lonDeg, latDeg) {
  const [lo, la] = [rad(lonDeg), rad(latDeg)];
  return [Math.cos(la) * Math.cos(lo), Math.cos(la) * Math.sin(lo), Math.sin(la)];
}

function drawBoost() {
  const s0 = +$("s0").value, p = +$("deg").value;
  const d = unit(+$("lon").value, +$("lat").value);
  const axis = unit(+$("alon").value, +$("alat").value);
  const beta = +$("beta").value;
  const st = JSON.parse(sphere_state_json(s0, s0 * p * d[0], s0 * p * d[1], s0 * p * d[2], beta, ...axis));
  const v = sphereView;
  v.clear();
  sphereWire(v, "#ccc");
  if (st.error) {
    $("boost-out").innerHTML = `<span class="err">${st.error}</span>`;
    return;
  }
  // the sphere |p| = const and its boosted image
  for (const plane of ["xy", "xz", "yz"]) v.polyline(circle(p, plane, 48), "#9bd", 1, true);
  const pts = ellipsoid_points(p, beta, ...axis, N_LAT, N_LON);
  const at = (i, j) => [pts[3 * (i * N_LON + j)], pts[3 * (i * N_LON + j) + 1], pts[3 * (i * N_LON + j) + 2]];
  for (let i = 1; i < N_LAT; i++) {
    const ring = [];
    for (let j = 0; j < N_LON; j++) ring.push(at(i, j));
    v.polyline(ring, "#7a4", 1, true);
  }
  for (let j = 0; j < N_LON; j += 2) {
    const mer = [];
    for (let i = 0; i <= N_LAT; i++) mer.push(at(i, j));
    v.polyline(mer, "#7a4", 1);
  }
  v.arrow([0, 0, 0], axis.map((x) => x * 1.1 * Math.sign(beta || 1)), "#a7d");
  v.polyline([[0, 0, 0], st.p], "#27c", 1);
  v.polyline([[0, 0, 0], st.p_boosted], "#d33", 1);
  v.dot(st.p, "#27c");
  v.dot(st.p_boosted, "#d33");
  const m = st.mueller.map((r) => r.map((x) => fmt(x, 4).padStart(8)).join(" ")).join("\n");
  $("boost-out").textContent =
    `S   = [${st.stokes.map((x) => fmt(x)).join(", ")}]\n` +
    `S'  = [${st.boosted.map((x) => fmt(x)).join(", ")}]\n` +
    `p   = ${fmt(st.degree)}   p' = ${fmt(st.degree_boosted)}\n` +
    `S0² - |S|² = ${fmt(st.invariant, 6)}  →  ${fmt(st.invariant_boosted, 6)}\n\nMueller matrix\n${m}`;
}

// Factorization panel

const frameView = new View($("frame"), () => drawFactor());
const SCHEMES = ["121", "131", "212", "232", "313", "323", "123", "132", "213", "231", "312", "321"];

function drawFactor() {
  const scheme = $("scheme").value;
  const r = JSON.parse(factor_angles_json(scheme, rad(+$("fa").value), rad(+$("fb").value), rad(+$("fc").value)));
  const v = frameView;
  v.clear();
  sphereWire(v, "#ddd");
  const body = $("factors").tBodies[0];
  body.innerHTML = "";
  if (r.error) {
    $("quat").innerHTML = `<span class="err">${r.error}</span>`;
    return;
  }
  const colors = ["#d33", "#3a3", "#27c"];
  for (let k = 0; k < 3; k++) {
    const col = r.rotation.map((row) => row[k]);
    v.arrow([0, 0, 0], col, colors[k], 3);
    v.label(col, `R e${k + 1}`, colors[k]);
  }
  $("quat").textContent = `quaternion (n0, n1, n2, n3) = (${r.quaternion.map((x) => fmt(x, 6)).join(", ")})`;
  for (const f of r.factorizations) {
    const tr = document.createElement("tr");
    tr.className = [f.flag ? "flagged" : "", f.scheme === scheme ? "chosen" : ""].join(" ").trim();
    const deg = f.angles.map((x) => fmt((x * 180) / Math.PI, 3));
    tr.innerHTML = `<td>${f.scheme}</td><td>${deg[0]}</td><td>${deg[1]}</td><td>${deg[2]}</td>` +
      `<td>${f.flag ?? ""}</td><td>${f.error.toExponential(1)}</td>`;
    body.appendChild(tr);
  }
}

await init();
for (const s of SCHEMES) $("scheme").add(new Option(s, s, s === "123", s === "123"));
bindOutputs(["s0", "deg", "lon", "lat", "beta", "alon", "alat"], drawBoost);
bindOutputs(["fa", "fb", "fc"], drawFactor);
$("scheme").addEventListener("change", drawFactor);
drawBoost();
drawFactor();
