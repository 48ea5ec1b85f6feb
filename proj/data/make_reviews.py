"""Writes reviews.txt, a small synthetic product and restaurant review corpus."""
import random

random.seed(7)

ITEMS = ["phone", "laptop", "blender", "pizza", "burger", "hotel room", "headset", "camera",
         "coffee", "pasta", "charger", "tent", "backpack", "salad", "novel", "keyboard",
         "vacuum", "sushi", "mattress", "printer"]
GOOD = ["great", "excellent", "solid", "lovely", "fantastic", "reliable", "tasty", "sturdy", "fresh", "comfy"]
BAD = ["awful", "flimsy", "bland", "noisy", "overpriced", "broken", "cold", "slow", "cheap", "greasy"]
ASPECTS = ["battery", "price", "service", "delivery", "packaging", "flavor", "screen", "staff", "size", "sound"]
VERBS = ["loved", "liked", "hated", "returned", "recommend", "bought", "ordered", "tried"]
TIMES = ["last week", "yesterday", "for my birthday", "on sale", "twice", "after a long day"]
ENDINGS = ["!", ".", "!!", "...", " :)", " :(", "?"]

TEMPLATES = [
    "The {item} is {good}, and the {aspect} was {good}{end}",
    "{Good} {item}, {bad} {aspect}{end}",
    "I {verb} this {item} {time}{end}",
    "We {verb} the {item} {time}; the {aspect} was {bad}{end}",
    "Would not buy this {item} again, the {aspect} is {bad}{end}",
    "Five stars, {good} {item} and {good} {aspect}{end}",
    "One star. The {item} arrived {bad}{end}",
    "Honestly the {aspect} of this {item} is {good}{end}",
    "My {item} was {bad} but the {aspect} was {good}{end}",
    "{Good}! I {verb} it {time}{end}",
    "Don't waste money on this {item}{end}",
    "The {aspect} made the {item} worth it{end}",
]


def review():
    t = random.choice(TEMPLATES)
    g = random.choice(GOOD)
    return t.format(item=random.choice(ITEMS), good=g, Good=g.capitalize(), bad=random.choice(BAD),
                    aspect=random.choice(ASPECTS), verb=random.choice(VERBS), time=random.choice(TIMES),
                    end=random.choice(ENDINGS))


with open("reviews.txt", "w", encoding="utf-8") as f:
    for _ in range(1500):
        f.write(review() + "\n")
