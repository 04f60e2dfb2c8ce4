"""Deterministic demo dataset: the packaged graph snapshot and search corpus.

``populate`` merges the whole catalog into a store through the same upsert
operations the pipeline uses, so rebuilding on top of an already-populated
store is a no-op. All randomness comes from one fixed seed; regenerating the
packaged files (``python -m kgatlas.fixture``) is byte-stable.

The catalog layout is rigid on purpose: the demo product "Huawei TaiShan
Server" carries its category only as a node property and has exactly three
incident edges (brand, model, price), which the expand flow depends on.
"""

from __future__ import annotations

import json
import random
from pathlib import Path

from kgatlas.graph import GraphStore
from kgatlas.ingest import parse_price

SEED = 412023

DATA_DIR = Path(__file__).parent / "data"
FIXTURE_PATH = DATA_DIR / "fixture.json"
CORPUS_DIR = DATA_DIR / "corpus"

# The demo ingestion request used by docs and tests.
CANONICAL_QUERY = {
    "name": "computing server",
    "spec_params": {"cpu": "Kunpeng 920", "ram": "256GB"},
}

EXPECTED_STATS = {
    "Category": 49,
    "Product": 269,
    "Brand": 147,
    "Model": 265,
    "Price": 233,
    "BELONGS_TO": 303,
    "HAS_BRAND": 269,
    "HAS_MODEL": 269,
    "HAS_PRICE": 269,
    "nodes": 963,
    "relationships": 1110,
}

CATEGORIES = (
    "Computing Server", "Central Processing Unit", "Graphics Workstation",
    "Storage Array", "Network Switch", "Edge Gateway", "Rack Server",
    "Blade Server", "AI Training Server", "Database Appliance", "Load Balancer",
    "Firewall Appliance", "Wireless Access Point", "Core Router",
    "Solid State Drive", "Hard Disk Drive", "Memory Module", "Server Motherboard",
    "Power Supply Unit", "Server Chassis", "Cooling System", "Tape Library",
    "Object Storage Node", "Hyperconverged Node", "Virtualization Host",
    "Container Platform Node", "Backup Appliance", "NAS Device", "SAN Controller",
    "Fibre Channel Switch", "InfiniBand Switch", "GPU Accelerator", "FPGA Card",
    "Smart NIC", "Optical Module", "KVM Switch", "Serial Console Server",
    "UPS System", "PDU Unit", "Server Rack", "Industrial PC",
    "Embedded Controller", "Thin Client", "Desktop Workstation", "Mini PC",
    "Barebone System", "Mainframe System", "Quantum Computing Module",
    "HPC Cluster Node",
)

_REAL_BRANDS = (
    "Huawei", "Intel", "Inspur", "Lenovo", "Dell", "HPE", "Cisco", "Juniper",
    "Arista", "Supermicro", "Fujitsu", "NEC", "Hitachi", "Toshiba", "Samsung",
    "Micron", "Kingston", "Seagate", "Western Digital", "SanDisk", "AMD",
    "NVIDIA", "Qualcomm", "Broadcom", "Marvell", "Xilinx", "IBM", "Oracle",
    "Atos", "Tyan", "Gigabyte", "ASUS", "ASRock", "MSI", "Foxconn", "Quanta",
    "Wistron", "Compal", "Pegatron", "ZTE", "H3C", "Sugon", "PowerLeader",
    "Greatwall", "Founder", "Tsinghua Tongfang", "Hasee", "Acer", "BenQ",
    "Netgear", "TP-Link", "D-Link", "Ubiquiti", "MikroTik", "QNAP", "Synology",
    "Buffalo", "LaCie", "Promise", "Areca",
)
_BRAND_PREFIXES = (
    "Nova", "Apex", "Vertex", "Quantum", "Stellar", "Polar", "Vortex", "Titan",
    "Zenith", "Argus", "Helios", "Borealis", "Cobalt",
)
_BRAND_SUFFIXES = (
    "Systems", "Microsystems", "Computing", "Technologies", "Networks",
    "Dynamics", "Electronics",
)
BRANDS = (_REAL_BRANDS + tuple(
    f"{prefix} {suffix}" for prefix in _BRAND_PREFIXES for suffix in _BRAND_SUFFIXES
))[:147]

_SERIES = (
    "PowerCore", "DataMax", "HyperEdge", "CloudBase", "RackForce", "CoreStack",
    "NetPrime", "StorMaster", "CompuLine", "ProServe", "MaxRange", "TurboNode",
    "PrimeScale", "UltraDense", "FlexFrame", "GridWorks",
)
_MODEL_WORDS = (
    "Apex", "Vertex", "Titan", "Nova", "Orion", "Vector", "Pulse", "Summit",
    "Atlas", "Zenith", "Fusion", "Matrix", "Stratus", "Nimbus", "Aurora",
)
_MODEL_SUFFIXES = ("", " V2", " Pro", " Plus", " X", " C")
_CPU_POOL = (
    "Xeon Silver 4314", "Xeon Gold 6330", "EPYC 7543", "Kunpeng 920",
    "Phytium FT-2000", "Hygon C86 7285", "Xeon Platinum 8380", "EPYC 7763",
)
_RAM_POOL = ("64GB", "128GB", "192GB", "256GB", "384GB", "512GB", "768GB")
_STORAGE_POOL = ("2TB NVMe", "4TB SAS", "8TB NVMe SSD", "16TB HDD", "960GB SSD")
_DESCRIPTION_TEMPLATES = (
    "A {cat} built for sustained enterprise workloads.",
    "An entry-level {cat} aimed at branch deployments.",
    "A high-density {cat} for scale-out clusters.",
    "A workhorse {cat} balancing cost and throughput.",
    "A premium {cat} with redundancy throughout.",
)

# Products sharing one model node: later index reuses the earlier one's model.
_SHARED_MODEL_PAIRS = {150: 10, 160: 20, 170: 30, 180: 40}
# Products carrying a second category membership.
_SECOND_CATEGORY_RANGE = range(3, 38)

_TAISHAN = {
    "name": "Huawei TaiShan Server",
    "brand": "Huawei",
    "model": "Huawei TaiShan",
    "price": "23500 yuan",
    "category": "Computing Server",
    "description": "A high-performance server based on Kunpeng processors",
    "spec_params": {"cpu": "Kunpeng 920", "ram": "256GB", "storage": "8TB NVMe SSD"},
}

_PINNED_PRICES = {0: "23500 yuan", 1: "¥50000", 148: "28900 yuan"}
_PRICE_FORMATS = ("{} yuan", "¥{}", "${}", "{} USD")
_UNPARSEABLE_PRICES = ("negotiable", "contact sales")


def _build_price_pool(rng: random.Random) -> list[str]:
    pool: list[str | None] = [None] * 233
    for index, text in _PINNED_PRICES.items():
        pool[index] = text
    used = set(_PINNED_PRICES.values())
    free = [i for i, v in enumerate(pool) if v is None]
    for offset, index in enumerate(free):
        if offset < len(_UNPARSEABLE_PRICES):
            text = _UNPARSEABLE_PRICES[offset]
        else:
            text = None
            while text is None or text in used:
                amount = rng.randrange(500, 200000)
                text = rng.choice(_PRICE_FORMATS).format(amount)
        used.add(text)
        pool[index] = text
    return pool  # type: ignore[return-value]


def populate(store: GraphStore) -> None:
    """Merge the full demo catalog into ``store``; safe to run repeatedly."""
    rng = random.Random(SEED)

    category_ids = {name: store.merge_node("Category", name) for name in CATEGORIES}
    prices = _build_price_pool(rng)

    product_names: set[str] = set()
    model_names: set[str] = {_TAISHAN["model"], "Xeon Platinum 8375C", "TaiShan 2280 V2"}
    model_by_index: dict[int, str] = {}
    product_ids: list[int] = []

    for index in range(269):
        if index == 0:
            name = _TAISHAN["name"]
            brand = _TAISHAN["brand"]
            model = _TAISHAN["model"]
            category = _TAISHAN["category"]
            description = _TAISHAN["description"]
            spec_params = dict(_TAISHAN["spec_params"])
        elif index == 1:
            name = "Intel Xeon Processor"
            brand = "Intel"
            model = "Xeon Platinum 8375C"
            category = CATEGORIES[1]
            description = "A flagship data-center processor for dual-socket platforms."
            spec_params = {"cpu": "Xeon Platinum 8375C", "power": "300W"}
        elif index == 148:
            name = "Huawei TaiShan 2280 Server"
            brand = "Huawei"
            model = "TaiShan 2280 V2"
            category = "Computing Server"
            description = "A 2U rack computing server for balanced compute and storage."
            spec_params = {"cpu": "Kunpeng 920", "ram": "128GB DDR4", "storage": "4TB SAS"}
        else:
            brand = BRANDS[index] if index < len(BRANDS) else rng.choice(BRANDS)
            category = CATEGORIES[index % len(CATEGORIES)]
            series = rng.choice(_SERIES)
            if index in (49, 98, 147, 196):
                name = f"{brand} {series} Computing Server"
                while name in product_names:
                    series = rng.choice(_SERIES)
                    name = f"{brand} {series} Computing Server"
            else:
                name = f"{brand} {series} {rng.randrange(100, 9900)}"
                while name in product_names:
                    name = f"{brand} {series} {rng.randrange(100, 9900)}"
            if index in _SHARED_MODEL_PAIRS:
                model = model_by_index[_SHARED_MODEL_PAIRS[index]]
            else:
                model = None
                while model is None or model in model_names:
                    model = (
                        f"{rng.choice(_MODEL_WORDS)} {rng.randrange(100, 9900)}"
                        f"{rng.choice(_MODEL_SUFFIXES)}"
                    )
            description = rng.choice(_DESCRIPTION_TEMPLATES).format(cat=category.lower())
            spec_params = {"cpu": rng.choice(_CPU_POOL), "ram": rng.choice(_RAM_POOL)}
            if rng.random() < 0.6:
                spec_params["storage"] = rng.choice(_STORAGE_POOL)

        price = prices[index] if index < len(prices) else prices[rng.randrange(len(prices))]
        product_names.add(name)
        model_names.add(model)
        model_by_index[index] = model

        product_id = store.merge_node("Product", name, {
            "category": category,
            "description": description,
            "spec_params": json.dumps(spec_params, ensure_ascii=False, sort_keys=True),
        })
        product_ids.append(product_id)
        brand_id = store.merge_node("Brand", brand)
        model_id = store.merge_node("Model", model)
        price_props: dict[str, object] = {}
        parsed = parse_price(price)
        if parsed is not None:
            price_props["amount"] = parsed[0]
            if parsed[1] is not None:
                price_props["currency"] = parsed[1]
        price_id = store.merge_node("Price", price, price_props)

        if index != 0:  # the demo product keeps category as a property only
            store.merge_relationship(product_id, "BELONGS_TO", category_ids[category])
        store.merge_relationship(product_id, "HAS_BRAND", brand_id)
        store.merge_relationship(product_id, "HAS_MODEL", model_id)
        store.merge_relationship(product_id, "HAS_PRICE", price_id)

    for index in _SECOND_CATEGORY_RANGE:
        primary = index % len(CATEGORIES)
        second = (index * 7 + 11) % len(CATEGORIES)
        if second == primary:
            second = (second + 1) % len(CATEGORIES)
        store.merge_relationship(
            product_ids[index], "BELONGS_TO", category_ids[CATEGORIES[second]]
        )

    stats = store.stats()
    mismatched = {k: (stats.get(k), v) for k, v in EXPECTED_STATS.items() if stats.get(k) != v}
    if mismatched:
        raise AssertionError(f"fixture drifted from expected shape: {mismatched}")


def build_fixture_store() -> GraphStore:
    store = GraphStore()
    populate(store)
    return store


def write_fixture(path=FIXTURE_PATH) -> None:
    build_fixture_store().snapshot(path)


# --- search corpus ---------------------------------------------------------------

def _page(slug: str, title: str, content: str) -> dict:
    return {
        "url": f"https://catalog.example.com/{slug}",
        "title": title,
        "content": content,
    }


CORPUS_PAGES = (
    _page(
        "p01-huawei-taishan-server",
        "Huawei TaiShan Server datasheet",
        "Name: Huawei TaiShan Server\n"
        "Type: Computing Server\n"
        "Brand: Huawei\n"
        "Model: Huawei TaiShan\n"
        "Price: 23500 yuan\n"
        "CPU: Kunpeng 920\n"
        "RAM: 256GB\n"
        "Storage: 8TB NVMe SSD\n"
        "Description: A high-performance server based on Kunpeng processors\n"
        "\n"
        "The TaiShan line is a general purpose computing server built around the\n"
        "Kunpeng 920 processor family, aimed at high-density data centers.\n",
    ),
    _page(
        "p02-huawei-taishan-2280",
        "Huawei TaiShan 2280 product page",
        "Name: Huawei TaiShan 2280 Server\n"
        "Type: Computing Server\n"
        "Brand: Huawei\n"
        "Model: TaiShan 2280 V2\n"
        "Price: 28900 yuan\n"
        "CPU: Kunpeng 920\n"
        "RAM: 128GB DDR4\n"
        "Storage: 4TB SAS\n"
        "\n"
        "A 2U rack computing server for balanced compute and storage workloads.\n",
    ),
    _page(
        "p03-inspur-nf5280-m6",
        "Inspur NF5280 M6 overview",
        "Name: Inspur NF5280 M6 Server\n"
        "Type: Rack Server\n"
        "Brand: Inspur\n"
        "Model: NF5280 M6\n"
        "Price: ¥31200\n"
        "CPU: Xeon Silver 4314\n"
        "RAM: 384GB DDR4\n"
        "Storage: 4TB SAS\n"
        "\n"
        "A mainstream dual-socket computing server for virtualization and databases.\n",
    ),
    _page(
        "p04-lenovo-thinksystem-sr650",
        "Lenovo ThinkSystem SR650 V2 specs",
        "Name: Lenovo ThinkSystem SR650 V2\n"
        "Type: Rack Server\n"
        "Brand: Lenovo\n"
        "Model: SR650 V2\n"
        "Price: $8600\n"
        "CPU: Xeon Gold 6330\n"
        "RAM: 512GB DDR4\n"
        "\n"
        "Enterprise computing server with strong reliability ratings and broad\n"
        "option support across the ThinkSystem portfolio.\n",
    ),
    _page(
        "p05-dell-poweredge-r750",
        "Dell PowerEdge R750 listing",
        "Name: Dell PowerEdge R750\n"
        "Type: Rack Server\n"
        "Brand: Dell\n"
        "Model: PowerEdge R750\n"
        "Price: 52000 yuan\n"
        "CPU: Xeon Gold 5318Y\n"
        "RAM: 256GB DDR4\n"
        "Power: 1400W\n"
        "\n"
        "A performance-focused computing server for dense virtualization estates.\n",
    ),
    _page(
        "p06-hpe-proliant-dl380",
        "HPE ProLiant DL380 Gen10 Plus page",
        "Name: HPE ProLiant DL380 Gen10 Plus\n"
        "Type: Rack Server\n"
        "Brand: HPE\n"
        "Model: ProLiant DL380 Gen10 Plus\n"
        "Price: $9100\n"
        "CPU: Xeon Silver 4210R\n"
        "RAM: 192GB DDR4\n"
        "\n"
        "The DL380 remains a versatile computing server for mixed enterprise\n"
        "workloads and hybrid cloud landing zones.\n",
    ),
    _page(
        "p07-sugon-i620-g30",
        "Sugon I620-G30 datasheet",
        "Name: Sugon I620-G30 Server\n"
        "Type: Computing Server\n"
        "Brand: Sugon\n"
        "Model: I620-G30\n"
        "Price: 27800 yuan\n"
        "CPU: Hygon C86 7285\n"
        "RAM: 256GB DDR4\n"
        "\n"
        "Domestic-platform computing server targeting secure government clouds.\n",
    ),
    _page(
        "p08-h3c-uniserver-r4900",
        "H3C UniServer R4900 G5 overview",
        "Name: H3C UniServer R4900 G5\n"
        "Type: Rack Server\n"
        "Brand: H3C\n"
        "Model: R4900 G5\n"
        "Price: ¥29800\n"
        "CPU: Xeon Silver 4314\n"
        "RAM: 128GB DDR4\n"
        "\n"
        "A serviceable mainstream computing server with flexible NVMe backplanes.\n",
    ),
    _page(
        "p09-fujitsu-primergy-rx2540",
        "Fujitsu PRIMERGY RX2540 M6 page",
        "Name: Fujitsu PRIMERGY RX2540 M6\n"
        "Type: Rack Server\n"
        "Brand: Fujitsu\n"
        "Model: RX2540 M6\n"
        "Price: $10400\n"
        "CPU: Xeon Gold 6326\n"
        "RAM: 256GB DDR4\n"
        "\n"
        "Compact computing server emphasizing energy efficiency and quiet racks.\n",
    ),
    _page(
        "p10-supermicro-sys-620p",
        "Supermicro SYS-620P-TR listing",
        "Name: Supermicro SYS-620P-TR Server\n"
        "Type: Rack Server\n"
        "Brand: Supermicro\n"
        "Model: SYS-620P-TR\n"
        "Price: $7800\n"
        "CPU: Xeon Silver 4316\n"
        "RAM: 128GB DDR4\n"
        "Storage: 2TB NVMe\n"
        "\n"
        "A cost-effective computing server chassis popular with integrators.\n",
    ),
    _page(
        "p11-zte-r5300-g4",
        "ZTE R5300 G4 product brief",
        "Name: ZTE R5300 G4 Server\n"
        "Type: Computing Server\n"
        "Brand: ZTE\n"
        "Model: R5300 G4\n"
        "Price: 24600 yuan\n"
        "CPU: EPYC 7543\n"
        "RAM: 192GB DDR4\n"
        "\n"
        "Carrier-grade computing server validated for NFV deployments.\n",
    ),
    _page(
        "p12-nec-express5800-r120f",
        "NEC Express5800 R120f page",
        "Name: NEC Express5800 R120f Server\n"
        "Type: Rack Server\n"
        "Brand: NEC\n"
        "Model: Express5800 R120f\n"
        "Price: $6900\n"
        "CPU: Xeon Silver 4310\n"
        "RAM: 96GB DDR4\n"
        "\n"
        "A dependable computing server series for branch and mid-size IT.\n",
    ),
    _page(
        "p13-greatwall-gw-r720",
        "Greatwall GW-R720 information",
        "Name: Greatwall GW-R720 Server\n"
        "Type: Rack Server\n"
        "Brand: Greatwall\n"
        "Model: GW-R720\n"
        "CPU: Phytium FT-2000\n"
        "RAM: 128GB DDR4\n"
        "\n"
        "Pricing for this computing server is available on request from resellers.\n",
    ),
    _page(
        "p14-atlas-800-training",
        "Atlas 800 training system",
        "Name: Atlas 800 Training Server\n"
        "Type: Computing Server\n"
        "Model: Atlas 800 9000\n"
        "Price: 98000 yuan\n"
        "CPU: Ascend 910\n"
        "RAM: 512GB\n"
        "\n"
        "An AI training computing server listed without vendor attribution.\n",
    ),
    _page(
        "p15-powerleader-pr2710p",
        "PowerLeader PR2710P listing",
        "Name: PowerLeader PR2710P Server\n"
        "Type: Rack Server\n"
        "Brand: PowerLeader\n"
        "Price: 21800 yuan\n"
        "CPU: Xeon Silver 4214\n"
        "RAM: 128GB DDR4\n"
        "\n"
        "This computing server listing omits the exact model designation.\n",
    ),
    _page(
        "p16-anonymous-rack-unit",
        "Unbranded rack unit",
        "Type: Rack Server\n"
        "Brand: Tyan\n"
        "Model: Thunder SX TN70A\n"
        "Price: $5600\n"
        "CPU: EPYC 7402\n"
        "RAM: 128GB DDR4\n"
        "\n"
        "An anonymous computing server listing scraped from a price aggregator.\n",
    ),
    _page(
        "p17-founder-yuanxing-r620",
        "Founder Yuanxing R620 stub",
        "Name: Founder Yuanxing R620 Server\n"
        "Type: Rack Server\n"
        "Brand: Founder\n"
        "Model: Yuanxing R620\n"
        "Price: 19800 yuan\n"
        "\n"
        "A computing server entry whose technical sheet failed to load.\n",
    ),
    _page(
        "p18-hitachi-ds120",
        "Hitachi Advanced Server DS120",
        "Name: Hitachi Advanced Server DS120\n"
        "Type: Rack Server\n"
        "Brand: Hitachi\n"
        "Model: DS120 G2\n"
        "Processor: Xeon Silver 4208\n"
        "Memory: 96GB DDR4\n"
        "\n"
        "Channel-only computing server sold through project quotations.\n",
    ),
    _page(
        "p19-openrack-sled-v3",
        "OpenRack compute sled V3",
        "Name: OpenRack Compute Sled V3\n"
        "Type: Computing Server\n"
        "Model: ORC-V3\n"
        "Price: $4300\n"
        "Processor: Xeon D-2183IT\n"
        "Memory: 64GB DDR4\n"
        "\n"
        "A white-box computing server sled following open rack dimensions.\n",
    ),
    _page(
        "p20-quanta-quantagrid",
        "Quanta QuantaGrid entry",
        "Name: Quanta QuantaGrid Server\n"
        "Type: Rack Server\n"
        "Brand: Quanta\n"
        "Price: $5100\n"
        "Processor: Xeon Silver 4216\n"
        "Memory: 96GB DDR4\n"
        "\n"
        "The listing for this computing server does not state a model number.\n",
    ),
    _page(
        "p21-kunpeng-devkit",
        "Kunpeng development kit",
        "Name: Kunpeng Development Kit\n"
        "Price: 4200 yuan\n"
        "\n"
        "A developer board built around the Kunpeng 920 cpu for porting computing\n"
        "server software to the architecture. RAM and storage are sold separately.\n",
    ),
    _page(
        "p22-xinghe-cloud-node",
        "Xinghe cloud node preview",
        "Name: Xinghe Cloud Node\n"
        "Type: Computing Server\n"
        "\n"
        "A preview page for an upcoming computing server family. Full\n"
        "specification, brand assignment and launch cost will be announced at the\n"
        "autumn event.\n",
    ),
    _page(
        "p23-polaris-edge",
        "Polaris edge concept",
        "Name: Polaris Edge Server\n"
        "Brand: Polaris Systems\n"
        "Memory: 32GB LPDDR5\n"
        "\n"
        "A fanless edge computing server concept shown at an industry expo. Model\n"
        "numbering and launch price were not disclosed.\n",
    ),
    _page(
        "p24-hanguang-storage",
        "Hanguang storage node",
        "Name: Hanguang Storage Server\n"
        "Type: Storage Server\n"
        "Storage: 60 bays\n"
        "\n"
        "Capacity-oriented computing server derivative. Vendor and model are\n"
        "pending certification and the price is to be announced.\n",
    ),
    _page(
        "p25-tianhe-blade",
        "Tianhe compute blade",
        "Name: Tianhe Compute Blade\n"
        "Model: TH-2000\n"
        "\n"
        "A dense blade computing server used in research clusters. Commercial\n"
        "brand, memory options and price are listed only in procurement portals.\n",
    ),
    _page(
        "p26-aurora-appliance",
        "Aurora rack appliance",
        "Name: Aurora Rack Appliance\n"
        "Brand: Aurora Cirrus\n"
        "\n"
        "An integrated computing server appliance. The vendor withheld model,\n"
        "price and detailed specification until general availability.\n",
    ),
    _page(
        "p27-market-report",
        "Computing server market report",
        "The annual computing server market report highlights double-digit growth\n"
        "in hyperscale demand while enterprise refresh cycles lengthen. Analysts\n"
        "expect consolidation among mid-tier vendors over the next two years.\n",
    ),
    _page(
        "p28-fleet-webinar",
        "Fleet sizing webinar",
        "Join our webinar on right-sizing a computing server fleet. Topics include\n"
        "capacity planning, power budgeting and procurement timing for teams of\n"
        "every size.\n",
    ),
    _page(
        "p29-buyers-guide",
        "Small business buyers guide",
        "How to choose a computing server for a small business. Start from the\n"
        "workload profile rather than raw benchmark charts, and buy only what you\n"
        "can operate.\n",
    ),
    _page(
        "p30-conference-recap",
        "Conference recap",
        "Conference recap. The keynote demonstrated live migration across a\n"
        "computing server cluster with zero dropped requests during the failover\n"
        "drill.\n",
    ),
)


def write_corpus(directory=CORPUS_DIR) -> None:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    for page in CORPUS_PAGES:
        slug = page["url"].rsplit("/", 1)[1]
        with open(directory / f"{slug}.json", "w", encoding="utf-8") as handle:
            json.dump(page, handle, ensure_ascii=False, indent=2, sort_keys=True)
            handle.write("\n")


if __name__ == "__main__":
    DATA_DIR.mkdir(parents=True, exist_ok=True)
    write_fixture()
    write_corpus()
    print(f"wrote {FIXTURE_PATH} and {len(CORPUS_PAGES)} corpus pages under {CORPUS_DIR}")
